#include "harmkern/io.hpp"

#include <sstream>

#include "harmkern/errors.hpp"

namespace harmkern {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Json index_json(const MultiIndex& a, int dim) {
  Json arr = Json::array();
  for (int i = 0; i < dim; ++i) arr.push_back(static_cast<int>(a[i]));
  return arr;
}

MultiIndex index_from_json(const Json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) throw ParameterError("multi-index has wrong length");
  MultiIndex a{};
  for (int i = 0; i < dim; ++i) a[i] = static_cast<std::int8_t>(j[i].get<int>());
  return a;
}

std::string mixed_monomial(const JetMonomial& m, int a, int b, RadialVar var) {
  std::string s = to_string(m) == "1" ? "" : to_string(m);
  auto append = [&](const char* name, int e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += name;
    if (e > 1) s += "^" + std::to_string(e);
  };
  append(var == RadialVar::Green ? "u" : "t", a);
  append("v", b);
  return s.empty() ? "1" : s;
}

KernelCoeff kernel_coeff_from_json(const Json& j) {
  KernelCoeff c;
  for (const Json& entry : j) {
    if (!entry.is_array() || entry.size() != 2) throw ParameterError("coefficient entry must be [rational, monomial]");
    Rational q = parse_rational(entry[0].get<std::string>());
    int a = 0, b = 0;
    std::string jet;
    for (const std::string& f : split(entry[1].get<std::string>(), '*')) {
      std::string name = f.substr(0, f.find('^'));
      int e = f.find('^') == std::string::npos ? 1 : std::stoi(f.substr(f.find('^') + 1));
      if (name == "t" || name == "u") a += e;
      else if (name == "v") b += e;
      else jet += (jet.empty() ? "" : "*") + f;
    }
    JetPoly p;
    p.add_term(parse_jet_monomial(jet.empty() ? "1" : jet), q);
    c.add(a, b, p);
  }
  return c;
}

Json kernel_coeff_json(const KernelCoeff& c, RadialVar var) {
  Json arr = Json::array();
  for (const auto& [k, p] : c.terms())
    for (const auto& [m, q] : p.terms()) arr.push_back(Json::array({to_string(q), mixed_monomial(m, k.first, k.second, var)}));
  return arr;
}

}  // namespace

Json to_json(const JetPoly& p) {
  Json o = Json::object();
  for (const auto& [m, q] : p.terms()) o[to_string(m)] = to_string(q);
  return o;
}

JetPoly jet_poly_from_json(const Json& j) {
  if (!j.is_object()) throw ParameterError("jet polynomial must be an object");
  JetPoly p;
  for (const auto& [k, v] : j.items()) p.add_term(parse_jet_monomial(k), parse_rational(v.get<std::string>()));
  return p;
}

Json to_json(const BoundarySymbol& s) {
  Json out;
  out["kind"] = std::string(to_string(s.kind));
  out["n"] = s.n;
  out["order"] = s.order;
  Json grades = Json::array();
  for (int j = 0; j <= s.depth(); ++j) {
    Json g;
    g["j"] = j;
    g["cap"] = s.grades[j].cap();
    Json terms = Json::array();
    for (const auto& [k, c] : s.grades[j].terms()) {
      Json t;
      t["coeff"] = to_json(c.re);
      if (!c.im.is_zero()) t["coeff_im"] = to_json(c.im);
      t["xp"] = index_json(k.xp, s.n - 1);
      t["xi"] = index_json(k.xi, s.n - 1);
      t["w"] = k.w;
      t["xn"] = k.xn;
      t["yn"] = k.yn;
      terms.push_back(t);
    }
    g["terms"] = terms;
    grades.push_back(g);
  }
  out["grades"] = grades;
  return out;
}

BoundarySymbol symbol_from_json(const Json& j) {
  try {
    BoundarySymbol s;
    s.kind = parse_symbol_kind(j.at("kind").get<std::string>());
    s.n = j.at("n").get<int>();
    if (s.n < 2 || s.n > kMaxDimension) throw ParameterError("dimension out of range");
    s.order = j.value("order", 0);
    for (const Json& g : j.at("grades")) {
      if (g.at("j").get<int>() != static_cast<int>(s.grades.size())) throw ParameterError("grades must be listed in order");
      SymbolSeries series(s.n, g.value("cap", 0), carries_exp_xn(s.kind), carries_exp_yn(s.kind));
      for (const Json& t : g.at("terms")) {
        TermKey key{};
        key.xp = index_from_json(t.at("xp"), s.n - 1);
        key.xi = index_from_json(t.at("xi"), s.n - 1);
        key.w = t.at("w").get<int>();
        key.xn = t.value("xn", 0);
        key.yn = t.value("yn", 0);
        JetCoeff c{jet_poly_from_json(t.at("coeff")), t.contains("coeff_im") ? jet_poly_from_json(t["coeff_im"]) : JetPoly()};
        series.add(key, c);
      }
      s.grades.push_back(series);
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed symbol JSON: ") + e.what());
  }
}

Json to_json(const KernelExpansion& e) {
  Json out;
  out["radial_var"] = std::string(to_string(e.var));
  out["n"] = e.n;
  out["prefactor"] = "c_n";
  Json terms = Json::array();
  for (const KernelTerm& t : e.terms) {
    Json o;
    o["coeff_t_poly"] = kernel_coeff_json(t.coeff, e.var);
    o["power"] = t.power;
    o["log"] = t.log;
    terms.push_back(o);
  }
  out["terms"] = terms;
  Json rem = Json::array();
  for (const KernelRemainder& r : e.remainders) {
    Json o;
    o["power"] = r.power;
    o["xn"] = r.q;
    o["yn"] = r.r;
    o["w"] = r.p;
    o["coeff"] = to_json(r.coeff);
    rem.push_back(o);
  }
  out["remainders"] = rem;
  return out;
}

KernelExpansion kernel_from_json(const Json& j) {
  try {
    KernelExpansion e;
    e.var = parse_radial_var(j.at("radial_var").get<std::string>());
    e.n = j.at("n").get<int>();
    for (const Json& t : j.at("terms")) e.add(kernel_coeff_from_json(t.at("coeff_t_poly")), t.at("power").get<int>(), t.at("log").get<bool>());
    if (j.contains("remainders"))
      for (const Json& r : j["remainders"])
        e.remainders.push_back({r.at("power").get<int>(), r.at("xn").get<int>(), r.at("yn").get<int>(), r.at("w").get<int>(),
                                jet_poly_from_json(r.at("coeff"))});
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw ParameterError(std::string("malformed kernel JSON: ") + ex.what());
  }
}

DomainSpec parse_domain(int n, std::string_view jet) {
  if (n < 2 || n > kMaxDimension) throw ParameterError("dimension must lie in 2.." + std::to_string(kMaxDimension));
  std::vector<std::string> items = split(jet, ',');
  if (items.empty() || items.size() > static_cast<std::size_t>(kMaxJet)) throw ParameterError("jet length must lie in 1..8");
  DomainSpec dom{n, {}};
  for (std::size_t k = 0; k < items.size(); ++k) {
    const std::string& s = items[k];
    if (s.empty()) throw ParameterError("empty jet entry");
    if (s[0] == 'a') {
      if (s != "a" + std::to_string(k + 1)) throw ParameterError("symbolic jet entry " + s + " out of position");
      dom.jet.push_back(JetPoly::variable(static_cast<int>(k + 1)));
    } else {
      dom.jet.push_back(JetPoly(parse_rational(s)));
    }
  }
  dom.validate();
  return dom;
}

}  // namespace harmkern
