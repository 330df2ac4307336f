#include "fapprox/finite_algebra.hpp"

#include <limits>
#include <numeric>

namespace fapprox {

std::size_t table_size(std::size_t n, unsigned arity) {
  std::size_t total = 1;
  for (unsigned i = 0; i < arity; ++i) {
    if (n != 0 && total > std::numeric_limits<std::size_t>::max() / n) throw Error("operation table too large");
    total *= n;
  }
  return total;
}

Operation Operation::table(unsigned arity, std::vector<ElementId> entries) {
  Operation op;
  op.arity_ = arity;
  op.table_ = std::move(entries);
  return op;
}

Operation Operation::lazy(unsigned arity, Fn fn) {
  if (!fn) throw Error("lazy operation needs a function");
  Operation op;
  op.arity_ = arity;
  op.fn_ = std::move(fn);
  return op;
}

ElementId Operation::apply(std::span<const ElementId> args, std::size_t carrier_size) const {
  if (fn_) return fn_(args);
  std::size_t index = 0;
  for (ElementId a : args) index = index * carrier_size + a;
  if (index >= table_.size()) throw Error("operation table lookup out of range");
  return table_[index];
}

Embedding Embedding::values(std::vector<Rational> values) {
  Embedding e;
  // Common denominator, if everything fits in 64 bits.
  Integer lcm = 1;
  bool fits = true;
  for (const auto& v : values) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    if (!fits_int64(lcm)) {
      fits = false;
      break;
    }
  }
  const Integer limit = Integer(1) << 62;
  std::vector<std::int64_t> nums;
  if (fits) {
    nums.reserve(values.size());
    for (const auto& v : values) {
      Integer n = v.get_num() * (lcm / v.get_den());
      if (abs(n) >= limit) {
        fits = false;
        break;
      }
      nums.push_back(n.get_si());
    }
  }
  if (fits) {
    auto shared = std::make_shared<std::vector<std::int64_t>>(std::move(nums));
    e.scaled_ = ScaledEmbedding{lcm.get_si(), [shared](ElementId id) { return (*shared)[id]; }};
  }
  auto store = std::make_shared<std::vector<Rational>>(std::move(values));
  e.fn_ = [store](ElementId id) { return store->at(id); };
  return e;
}

Embedding Embedding::scaled(std::int64_t denominator, std::function<std::int64_t(ElementId)> numerator) {
  if (denominator <= 0) throw Error("scaled embedding needs a positive denominator");
  Embedding e;
  e.scaled_ = ScaledEmbedding{denominator, numerator};
  e.fn_ = [denominator, numerator](ElementId id) {
    Rational r(Integer(static_cast<long>(numerator(id))), Integer(static_cast<long>(denominator)));
    r.canonicalize();
    return r;
  };
  return e;
}

Embedding Embedding::function(std::function<Rational(ElementId)> fn) {
  if (!fn) throw Error("embedding needs a function");
  Embedding e;
  e.fn_ = std::move(fn);
  return e;
}

FiniteAlgebra::FiniteAlgebra(Signature signature, std::size_t carrier_size, std::vector<Operation> ops,
                             Ambient ambient, Embedding embedding)
    : signature_(std::move(signature)),
      size_(carrier_size),
      ops_(std::move(ops)),
      ambient_(ambient),
      embedding_(std::move(embedding)) {
  if (size_ == 0) throw Error("finite algebra with empty carrier");
  if (size_ > std::numeric_limits<ElementId>::max()) throw Error("carrier too large");
  if (ops_.size() != signature_.size()) throw Error("one operation per signature symbol required");
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].arity() != signature_[i].arity) {
      throw Error("operation for '" + signature_[i].name + "' has the wrong arity");
    }
    if (ops_[i].materialized() && ops_[i].entries().size() != table_size(size_, ops_[i].arity())) {
      throw Error("table for '" + signature_[i].name + "' is not total");
    }
  }
}

Rational FiniteAlgebra::embed(ElementId id) const {
  if (embedding_.empty()) throw Error("algebra has no embedding");
  if (id >= size_) throw Error("element id out of range");
  return embedding_(id);
}

std::string FiniteAlgebra::label(ElementId id) const {
  if (labeler_) return labeler_(id);
  if (embedding_.empty()) return "#" + std::to_string(id);
  return to_decimal_string(embed(id));
}

FiniteAlgebra FiniteAlgebra::with_embedding(Ambient ambient, Embedding embedding) const {
  FiniteAlgebra copy = *this;
  copy.ambient_ = ambient;
  copy.embedding_ = std::move(embedding);
  copy.labeler_ = nullptr;
  return copy;
}

FiniteAlgebra FiniteAlgebra::materialized(std::size_t max_entries) const {
  std::vector<Operation> ops;
  for (std::size_t s = 0; s < ops_.size(); ++s) {
    const Operation& op = ops_[s];
    if (op.materialized()) {
      ops.push_back(op);
      continue;
    }
    std::size_t total = table_size(size_, op.arity());
    if (total > max_entries) throw Error("table for '" + signature_[s].name + "' exceeds the materialization limit");
    std::vector<ElementId> entries(total);
    std::vector<ElementId> args(op.arity(), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx;
      for (unsigned k = op.arity(); k-- > 0;) {
        args[k] = static_cast<ElementId>(rem % size_);
        rem /= size_;
      }
      entries[idx] = op.apply(args, size_);
    }
    ops.push_back(Operation::table(op.arity(), std::move(entries)));
  }
  FiniteAlgebra copy(signature_, size_, std::move(ops), ambient_, embedding_);
  copy.labeler_ = labeler_;
  return copy;
}

void FiniteAlgebra::validate() const {
  for (std::size_t s = 0; s < ops_.size(); ++s) {
    if (!ops_[s].materialized()) continue;
    for (ElementId v : ops_[s].entries()) {
      if (v >= size_) throw Error("table for '" + signature_[s].name + "' has an entry outside the carrier");
    }
  }
}

}  // namespace fapprox
