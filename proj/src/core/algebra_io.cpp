#include "fapprox/algebra_io.hpp"

#include <fstream>
#include <sstream>

#include "fapprox/padic_systems.hpp"
#include "json.hpp"

namespace fapprox {

using nlohmann::ordered_json;

namespace {

ordered_json embedded_value(const Rational& x, const Ambient& ambient) {
  if (ambient.kind == AmbientKind::padic && sgn(x) >= 0) {
    try {
      PadicDigits d = PadicDigits::from_rational(x, ambient.p);
      return ordered_json{{"p", d.p}, {"valuation", d.valuation}, {"digits", d.digits}};
    } catch (const Error&) {
      // falls through to the rational form
    }
  }
  return to_string(x);
}

Rational read_value(const ordered_json& v, const Ambient& ambient) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (!v.is_object()) throw Error("embedding entries must be strings or p-adic digit records");
  if (ambient.kind != AmbientKind::padic) throw Error("p-adic digit record in a non-p-adic algebra");
  PadicDigits d;
  d.p = v.at("p").get<unsigned long>();
  if (d.p != ambient.p) throw Error("digit record prime differs from the ambient prime");
  d.valuation = v.at("valuation").get<long>();
  d.digits = v.at("digits").get<std::vector<unsigned>>();
  for (unsigned digit : d.digits) {
    if (digit >= d.p) throw Error("digit out of range in p-adic record");
  }
  return d.value();
}

}  // namespace

std::string algebra_to_json(const FiniteAlgebra& input) {
  const FiniteAlgebra alg = input.materialized();
  ordered_json doc;
  ordered_json sig = ordered_json::array();
  for (const auto& s : alg.signature().symbols()) sig.push_back({{"name", s.name}, {"arity", s.arity}});
  doc["signature"] = sig;
  doc["carrier_size"] = alg.size();
  ordered_json tables = ordered_json::object();
  for (std::size_t s = 0; s < alg.signature().size(); ++s) {
    tables[alg.signature()[s].name] = alg.operation(s).entries();
  }
  doc["tables"] = tables;
  const Ambient& amb = alg.ambient();
  if (alg.embedded()) {
    doc["ambient"] = amb.kind == AmbientKind::real ? ordered_json{{"kind", "real"}}
                                                   : ordered_json{{"kind", "padic"}, {"p", amb.p}};
    ordered_json emb = ordered_json::array();
    for (ElementId id = 0; id < alg.size(); ++id) emb.push_back(embedded_value(alg.embed(id), amb));
    doc["embedding"] = emb;
  }
  return doc.dump(1) + "\n";
}

FiniteAlgebra algebra_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("algebra file is not valid JSON: ") + e.what());
  }
  try {
    std::vector<Symbol> symbols;
    for (const auto& s : doc.at("signature")) symbols.push_back({s.at("name").get<std::string>(), s.at("arity").get<unsigned>()});
    Signature sig(std::move(symbols));
    const auto size = doc.at("carrier_size").get<std::size_t>();
    std::vector<Operation> ops;
    for (const auto& s : sig.symbols()) {
      auto entries = doc.at("tables").at(s.name).get<std::vector<ElementId>>();
      ops.push_back(Operation::table(s.arity, std::move(entries)));
    }
    Ambient ambient = Ambient::none();
    Embedding emb;
    if (doc.contains("embedding")) {
      const auto& e = doc.at("embedding");
      if (doc.contains("ambient")) {
        const std::string kind = doc["ambient"].at("kind").get<std::string>();
        if (kind == "real") {
          ambient = Ambient::real();
        } else if (kind == "padic") {
          ambient = Ambient::padic(doc["ambient"].at("p").get<unsigned long>());
        } else {
          throw Error("unknown ambient kind '" + kind + "'");
        }
      } else if (!e.empty() && e[0].is_object()) {
        ambient = Ambient::padic(e[0].at("p").get<unsigned long>());
      } else {
        ambient = Ambient::real();
      }
      if (e.size() != size) throw Error("embedding must list one value per carrier element");
      std::vector<Rational> values;
      values.reserve(size);
      for (const auto& v : e) values.push_back(read_value(v, ambient));
      emb = Embedding::values(std::move(values));
    }
    FiniteAlgebra alg(std::move(sig), size, std::move(ops), ambient, std::move(emb));
    alg.validate();
    if (ambient.kind == AmbientKind::padic) {
      alg.set_labeler([alg_embed = alg.embedding()](ElementId id) { return to_string(alg_embed(id)); });
    }
    return alg;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed algebra file: ") + e.what());
  }
}

void save_algebra(const FiniteAlgebra& alg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << algebra_to_json(alg);
}

FiniteAlgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return algebra_from_json(buf.str());
}

}  // namespace fapprox
