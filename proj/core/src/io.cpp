#include "recq/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "recq/errors.hpp"

namespace recq::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

mpz_class parse_mpz(const std::string& s) {
  if (s.empty()) throw domain_error("empty integer literal");
  mpz_class v;
  if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
    throw domain_error("bad integer literal '" + s + "'");
  return v;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw domain_error("parse error in " + path + ": " + e.what());
  }
  return j;
}

mpz_class mpz_from_json(const json& v, const std::string& where) {
  if (v.is_string()) return parse_mpz(v.get<std::string>());
  if (v.is_number_integer()) return mpz_class(v.get<long>());
  throw domain_error(where + ": integers must be decimal strings or ints");
}

IntPolynomial poly_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw domain_error(where + ": expected an array");
  std::vector<mpz_class> c;
  c.reserve(arr.size());
  for (const auto& v : arr) c.push_back(mpz_from_json(v, where));
  return IntPolynomial(std::move(c));
}

}  // namespace

IntPolynomial parse_poly(const std::string& text) {
  if (text == "x" || text == "X") return IntPolynomial::x();
  std::vector<mpz_class> c;
  for (const auto& tok : split_csv(text)) c.push_back(parse_mpz(tok));
  if (c.empty()) throw domain_error("empty polynomial literal");
  return IntPolynomial(std::move(c));
}

std::vector<u64> parse_u64_list(const std::string& csv) {
  std::vector<u64> out;
  if (csv.empty()) return out;
  for (const auto& tok : split_csv(csv)) {
    u64 v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
      throw domain_error("bad unsigned integer '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<mpz_class> parse_mpz_list(const std::string& csv) {
  std::vector<mpz_class> out;
  if (csv.empty()) return out;
  for (const auto& tok : split_csv(csv)) out.push_back(parse_mpz(tok));
  return out;
}

QuotientProblem load_problem(const std::string& path) {
  const json j = load_json_file(path);
  if (!j.contains("F") || !j.contains("G"))
    throw domain_error(path + ": problem file needs fields F and G");
  std::vector<u64> s;
  if (j.contains("invert_primes"))
    for (const auto& v : j["invert_primes"]) s.push_back(v.get<u64>());
  IntPolynomial g = poly_from_json(j["G"], path + ":G");
  const json& f = j["F"];
  if (f.contains("companion")) {
    const json& c = f["companion"];
    CompanionRecurrence rec;
    for (const auto& v : c["coeffs"])
      rec.coeffs.push_back(mpz_from_json(v, path + ":coeffs"));
    for (const auto& v : c["init"])
      rec.init.push_back(mpz_from_json(v, path + ":init"));
    return QuotientProblem::from_companion(std::move(rec), std::move(g),
                                           std::move(s));
  }
  if (f.contains("exppoly")) {
    ExpPolyRecurrence rec;
    for (const auto& term : f["exppoly"]) {
      ExpPolyTerm t;
      t.poly = poly_from_json(term["poly"], path + ":poly");
      t.root = mpz_from_json(term["root"], path + ":root");
      rec.terms.push_back(std::move(t));
    }
    return QuotientProblem::from_exppoly(std::move(rec), std::move(g),
                                         std::move(s));
  }
  throw domain_error(path + ": F must contain 'companion' or 'exppoly'");
}

SparseInstance load_sparse_instance(const std::string& path) {
  const json j = load_json_file(path);
  const u64 p = j.at("p").get<u64>();
  const unsigned k = j.value("k", 1u);
  FiniteField field;
  if (j.contains("modulus")) {
    std::vector<u64> mod;
    for (const auto& v : j["modulus"]) mod.push_back(v.get<u64>());
    field = FiniteField::with_modulus(p, std::move(mod));
    if (field.k() != k && j.contains("k"))
      throw domain_error(path + ": modulus degree disagrees with k");
  } else {
    field = FiniteField::make(p, k, j.value("seed", 1ULL));
  }
  SparseInstance inst;
  inst.field = std::move(field);
  auto read_elems = [&](const char* key) {
    std::vector<FFElem> out;
    for (const auto& e : j.at(key)) {
      std::vector<u64> coeffs;
      if (e.is_array())
        for (const auto& v : e) coeffs.push_back(v.get<u64>());
      else
        coeffs.push_back(e.get<u64>());
      out.push_back(inst.field.element(std::move(coeffs)));
    }
    return out;
  };
  inst.c = read_elems("c");
  inst.a = read_elems("a");
  inst.validate();
  return inst;
}

SieveSystem load_sieve_system(const std::string& path) {
  const json j = load_json_file(path);
  SieveSystem sys;
  sys.y = j.at("y").get<u64>();
  sys.z = j.at("z").get<u64>();
  sys.h = j.at("h").get<unsigned>();
  sys.gtilde = poly_from_json(j.at("gtilde"), path + ":gtilde");
  for (const auto& v : j.value("roots", json::array()))
    sys.roots.push_back(mpz_from_json(v, path + ":roots"));
  for (const auto& v : j.value("invert_primes", json::array()))
    sys.inverted_primes.push_back(v.get<u64>());
  for (const auto& e : j.at("entries")) {
    SieveSystem::Entry entry;
    entry.p = e.at("p").get<u64>();
    for (const auto& r : e.at("residues")) entry.residues.push_back(r.get<u64>());
    sys.entries.push_back(std::move(entry));
  }
  for (const auto& e : j.value("excluded", json::array())) {
    const std::string reason = e.at("reason").get<std::string>();
    SieveSystem::Exclusion ex;
    if (reason == "identically-vanishing")
      ex = SieveSystem::Exclusion::kIdenticallyVanishing;
    else if (reason == "small-order")
      ex = SieveSystem::Exclusion::kSmallOrder;
    else if (reason == "in-S")
      ex = SieveSystem::Exclusion::kInS;
    else
      throw domain_error(path + ": unknown exclusion reason " + reason);
    sys.excluded.push_back({e.at("p").get<u64>(), ex});
  }
  return sys;
}

void save_sieve_system(const SieveSystem& sys, const std::string& path) {
  nlohmann::ordered_json j;
  j["y"] = sys.y;
  j["z"] = sys.z;
  j["h"] = sys.h;
  {
    json arr = json::array();
    for (const auto& c : sys.gtilde.coeffs()) arr.push_back(c.get_str());
    j["gtilde"] = std::move(arr);
  }
  {
    json arr = json::array();
    for (const auto& r : sys.roots) arr.push_back(r.get_str());
    j["roots"] = std::move(arr);
  }
  j["invert_primes"] = sys.inverted_primes;
  {
    json arr = json::array();
    for (const auto& e : sys.entries) {
      json je;
      je["p"] = e.p;
      je["residues"] = e.residues;
      arr.push_back(std::move(je));
    }
    j["entries"] = std::move(arr);
  }
  {
    json arr = json::array();
    for (const auto& e : sys.excluded) {
      json je;
      je["p"] = e.p;
      je["reason"] = to_string(e.reason);
      arr.push_back(std::move(je));
    }
    j["excluded"] = std::move(arr);
  }
  std::ofstream out(path);
  if (!out) throw domain_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace recq::io
