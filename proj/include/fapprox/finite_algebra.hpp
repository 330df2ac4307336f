#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fapprox/ambient.hpp"
#include "fapprox/signature.hpp"

namespace fapprox {

using ElementId = std::uint32_t;

/// An n-ary operation on carrier ids: a materialized row-major table or a
/// lazily evaluated closure (for carriers whose tables would not fit).
class Operation {
 public:
  using Fn = std::function<ElementId(std::span<const ElementId>)>;

  static Operation table(unsigned arity, std::vector<ElementId> entries);
  static Operation lazy(unsigned arity, Fn fn);

  unsigned arity() const { return arity_; }
  bool materialized() const { return !fn_; }
  const std::vector<ElementId>& entries() const { return table_; }

  ElementId apply(std::span<const ElementId> args, std::size_t carrier_size) const;

 private:
  unsigned arity_ = 0;
  std::vector<ElementId> table_;
  Fn fn_;
};

/// Embedded values written as numerator(id) / denominator with 64-bit
/// numerators; lets hot loops compare values without big-number arithmetic.
struct ScaledEmbedding {
  std::int64_t denominator = 1;
  std::function<std::int64_t(ElementId)> numerator;
};

/// The map j from carrier ids into the ambient field.
class Embedding {
 public:
  Embedding() = default;

  static Embedding values(std::vector<Rational> values);
  static Embedding scaled(std::int64_t denominator, std::function<std::int64_t(ElementId)> numerator);
  static Embedding function(std::function<Rational(ElementId)> fn);

  bool empty() const { return !fn_; }
  Rational operator()(ElementId id) const { return fn_(id); }
  const std::optional<ScaledEmbedding>& scaled() const { return scaled_; }

 private:
  std::function<Rational(ElementId)> fn_;
  std::optional<ScaledEmbedding> scaled_;
};

/// A finite algebra <A_f, theta> with an embedding j into an ambient field.
class FiniteAlgebra {
 public:
  FiniteAlgebra(Signature signature, std::size_t carrier_size, std::vector<Operation> ops, Ambient ambient,
                Embedding embedding);

  const Signature& signature() const { return signature_; }
  std::size_t size() const { return size_; }
  const Ambient& ambient() const { return ambient_; }
  const Embedding& embedding() const { return embedding_; }
  const Operation& operation(std::size_t symbol) const { return ops_.at(symbol); }

  ElementId apply(std::size_t symbol, std::span<const ElementId> args) const {
    return ops_[symbol].apply(args, size_);
  }
  ElementId apply(std::size_t symbol, ElementId a, ElementId b) const {
    const ElementId args[2] = {a, b};
    return ops_[symbol].apply(args, size_);
  }
  ElementId apply(const std::string& symbol, ElementId a, ElementId b) const {
    return apply(signature_.index_of(symbol), a, b);
  }

  bool embedded() const { return ambient_.kind != AmbientKind::none && !embedding_.empty(); }
  Rational embed(ElementId id) const;

  /// Display label for an element; defaults to its embedded value.
  std::string label(ElementId id) const;
  void set_labeler(std::function<std::string(ElementId)> labeler) { labeler_ = std::move(labeler); }

  /// Replace j (ring-probe attaches embeddings after construction).
  FiniteAlgebra with_embedding(Ambient ambient, Embedding embedding) const;

  /// Copy with every operation materialized as a table.
  FiniteAlgebra materialized(std::size_t max_entries = 50'000'000) const;

  /// Throws on out-of-range table entries or wrong table sizes.
  void validate() const;

 private:
  Signature signature_;
  std::size_t size_;
  std::vector<Operation> ops_;
  Ambient ambient_;
  Embedding embedding_;
  std::function<std::string(ElementId)> labeler_;
};

/// Number of entries in a total table of the given arity over n elements.
std::size_t table_size(std::size_t n, unsigned arity);

}  // namespace fapprox
