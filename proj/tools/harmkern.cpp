#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "harmkern/bergman_chain.hpp"
#include "harmkern/errors.hpp"
#include "harmkern/io.hpp"
#include "harmkern/kernel_transform.hpp"
#include "harmkern/numeric_oracle.hpp"
#include "harmkern/poisson_recursion.hpp"
#include "harmkern/reference_kernels.hpp"
#include "published_checks.hpp"

using namespace harmkern;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitConfig = 2;

struct ExpandOptions {
  std::string what = "poisson";
  int n = 3;
  std::string jet = "a1,a2,a3";
  int grades = 3;
  int weight = -1;
  std::string measure = "surface";
  std::string format = "text";
  bool symbol = false;
  std::string alpha = "0";
};

struct ClosedOptions {
  std::string kernel = "poisson";
  std::string domain = "halfspace";
  std::string x, y;
  double alpha = 0.0;
  double g0 = 0.0;
  std::string format = "text";
};

struct FdOptions {
  std::string mode = "convergence";
  std::string data = "exp-cos";
  std::string hs = "1/16,1/32,1/64,1/128";
  double eps = 0.01;
  double rmin = 0.2, rmax = 0.8;
  std::string format = "text";
};

struct BallOptions {
  int n = 3;
  int lmax = 60;
  std::string x, y;
  std::string format = "text";
};

struct FitOptions {
  std::string source = "file";
  std::string samples;
  std::string basis;
  std::string predict;
  int n = 3;
  int grades = 3;
  double t = 0.5;
  double rmin = 1e-3, rmax = 5e-2;
  int count = 40;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double parse_number(const std::string& s) {
  if (s.find('/') != std::string::npos) return to_double(parse_rational(s));
  std::size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size()) throw ParameterError("not a number: " + s);
  return v;
}

Point parse_point(const std::string& s, const char* what) {
  if (s.empty()) throw ParameterError(std::string("missing --") + what);
  std::vector<std::string> items = split_list(s);
  Point p(static_cast<Eigen::Index>(items.size()));
  for (std::size_t k = 0; k < items.size(); ++k) p(static_cast<Eigen::Index>(k)) = parse_number(items[k]);
  return p;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(15) << v;
  return os.str();
}

BoundaryMeasure parse_measure(const std::string& s) {
  if (s == "surface") return BoundaryMeasure::Surface;
  if (s == "chart") return BoundaryMeasure::Chart;
  throw ParameterError("measure must be surface or chart");
}

void print_kernel(const KernelExpansion& e) {
  std::cout << "radial variable: " << to_string(e.var) << ", n = " << e.n << ", prefactor c_n\n";
  for (const KernelTerm& t : e.terms)
    std::cout << "  r^" << t.power << (t.log ? " log r" : "") << ": " << t.coeff.to_string(e.var) << "\n";
  for (const KernelRemainder& r : e.remainders)
    std::cout << "  remainder at r^" << r.power << " from x_n^" << r.q << " y_n^" << r.r << " |xi|^" << r.p
              << " (non-polynomial in t): " << r.coeff.to_string() << "\n";
}

void print_symbol(const BoundarySymbol& s) {
  std::cout << to_string(s.kind) << " symbol, n = " << s.n << ", order " << s.order << "\n";
  for (int j = 0; j <= s.depth(); ++j)
    std::cout << "  grade " << j << " (cap " << s.grades[j].cap() << "): " << s.grades[j].to_string() << "\n";
}

int run_expand(const ExpandOptions& o) {
  DomainSpec dom = parse_domain(o.n, o.jet);
  if (o.grades < 0 || o.grades > 6) throw ParameterError("--grades must lie in 0..6");
  const int W = o.weight < 0 ? default_weight(o.grades) : o.weight;
  const BoundaryMeasure measure = parse_measure(o.measure);
  const Rational alpha = parse_rational(o.alpha);
  if (alpha != 0 && !(o.what == "lambda" && o.symbol)) throw ParameterError("--alpha applies to 'expand lambda --symbol' only");
  std::optional<BoundarySymbol> sym;
  std::optional<KernelExpansion> ker;
  if (o.what == "poisson") {
    BoundarySymbol k = compute_poisson_symbols(dom, o.grades, W);
    if (o.symbol) sym = k;
    else ker = transform_symbol(k);
  } else if (o.what == "bergman") {
    BergmanChain ch = bergman_chain(dom, o.grades, W, measure);
    if (o.symbol) sym = ch.g;
    else ker = transform_symbol(ch.g);
  } else if (o.what == "lambda") {
    if (alpha != 0) {
      BoundarySymbol k = compute_poisson_symbols(dom, o.grades, W);
      sym = lambda_symbol(k, dom, o.grades, WeightSpec{alpha, {}}, measure).symbol;
    } else {
      BergmanChain ch = bergman_chain(dom, o.grades, W, measure);
      if (o.symbol) sym = ch.p.symbol;
      else ker = lambda_inverse_boundary_kernel(ch.p);
    }
  } else {
    throw ParameterError("expand target must be poisson, bergman or lambda");
  }
  if (o.format == "json") {
    std::cout << (sym ? to_json(*sym) : to_json(*ker)).dump(2) << "\n";
  } else if (o.format == "text") {
    if (sym) print_symbol(*sym);
    else print_kernel(*ker);
  } else {
    throw ParameterError("--format must be text or json");
  }
  return 0;
}

int run_closed(const ClosedOptions& o) {
  const ClosedDomain d = parse_closed_domain(o.domain);
  Point x = parse_point(o.x, "x"), y = parse_point(o.y, "y");
  double value = 0.0;
  if (o.kernel == "poisson") value = eval_poisson_closed(d, x, y);
  else if (o.kernel == "bergman") value = eval_bergman_closed(d, x, y);
  else if (o.kernel == "weighted") {
    if (d != ClosedDomain::Halfspace) throw ParameterError("weighted kernels are available on the half-space only");
    value = eval_weighted_halfspace(o.alpha, o.g0, x, y);
  } else {
    throw ParameterError("--kernel must be poisson, bergman or weighted");
  }
  if (o.format == "csv") {
    std::cout << "kind,n,alpha";
    for (int k = 0; k < x.size(); ++k) std::cout << ",x" << k + 1;
    for (int k = 0; k < y.size(); ++k) std::cout << ",y" << k + 1;
    std::cout << ",value\n" << o.kernel << "-" << o.domain << "," << x.size() << "," << fmt(o.alpha);
    for (int k = 0; k < x.size(); ++k) std::cout << "," << fmt(x(k));
    for (int k = 0; k < y.size(); ++k) std::cout << "," << fmt(y(k));
    std::cout << "," << fmt(value) << "\n";
  } else if (o.format == "text") {
    std::cout << fmt(value) << "\n";
  } else {
    throw ParameterError("--format must be text or csv");
  }
  return 0;
}

std::function<double(const Point&)> harmonic_data(const std::string& name) {
  if (name == "exp-cos") return [](const Point& x) { return std::exp(x(0)) * std::cos(x(1)); };
  if (name == "x2-y2") return [](const Point& x) { return x(0) * x(0) - x(1) * x(1); };
  if (name == "re-z5") return [](const Point& x) { return std::real(std::pow(std::complex<double>(x(0), x(1)), 5)); };
  if (name == "cos") return [](const Point& x) { return x(0); };
  if (name == "one") return [](const Point&) { return 1.0; };
  throw ParameterError("unknown boundary data '" + name + "' (exp-cos, x2-y2, re-z5, cos, one)");
}

int run_fd(const FdOptions& o) {
  Json report;
  std::vector<double> hs;
  for (const std::string& s : split_list(o.hs)) hs.push_back(parse_number(s));
  if (hs.empty()) throw ParameterError("--mesh needs at least one mesh width");
  if (o.mode == "convergence") {
    Point c = Point::Zero(2);
    ConvergenceStudy st = fd_convergence(FdDomain::ball(c, 1.0), hs, harmonic_data(o.data));
    report["domain"] = "unit disk";
    report["data"] = o.data;
    report["h"] = st.h;
    report["max_error"] = st.error;
    report["order"] = st.order;
    report["min_order"] = st.min_order();
  } else if (o.mode == "poisson-kernel") {
    const double h = hs.back();
    Point c(2), z(2);
    c << 0.0, 1.0;
    z << 0.0, 0.0;
    FdSolution sol = fd_poisson_kernel_ball(c, 1.0, z, o.eps, h);
    std::vector<Sample> samples;
    for (int k = 1; k * h <= o.rmax + 1e-12; ++k)
      if (k * h >= o.rmin - 1e-12)
        if (auto v = sol.value({0, k, 0})) samples.push_back({k * h, 1.0, 0.0, *v});
    const double c2 = dimension_constant_value(2);
    FitReport rep = fit_boundary_expansion(samples, {{-1, false, 0, 0}, {0, false, 0, 0}, {1, false, 0, 0}},
                                           {c2, -0.5 * c2, 0.0});
    report["domain"] = "unit disk tangent at the origin";
    report["h"] = h;
    report["solver"] = sol.solver;
    report["unknowns"] = sol.nodes.size();
    report["fit"] = rep.to_json();
  } else {
    throw ParameterError("--mode must be convergence or poisson-kernel");
  }
  if (o.format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    for (const auto& [k, v] : report.items()) std::cout << k << ": " << v.dump() << "\n";
  }
  return 0;
}

int run_ball(const BallOptions& o) {
  Point x = parse_point(o.x, "x"), y = parse_point(o.y, "y");
  if (x.size() != o.n || y.size() != o.n) throw ParameterError("points must have n coordinates");
  const double spectral = ball_spectral_bergman(o.n, o.lmax, x, y);
  const double closed = eval_bergman_closed(ClosedDomain::Ball, x, y);
  const double rel = std::abs(spectral - closed) / std::abs(closed);
  if (o.format == "json") {
    Json j;
    j["n"] = o.n;
    j["lmax"] = o.lmax;
    j["spectral"] = spectral;
    j["closed_form"] = closed;
    j["relative_error"] = rel;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "spectral " << fmt(spectral) << "\nclosed form " << fmt(closed) << "\nrelative error " << std::scientific
              << std::setprecision(3) << rel << "\n";
  }
  return 0;
}

BasisFunction parse_basis(const std::string& label) {
  BasisFunction b;
  bool have_r = false;
  for (const std::string& f : [&] {
         std::vector<std::string> v;
         std::stringstream ss(label);
         std::string s;
         while (std::getline(ss, s, '*')) v.push_back(s);
         return v;
       }()) {
    auto exp = [&](const std::string& s) { return s.find('^') == std::string::npos ? 1 : std::stoi(s.substr(s.find('^') + 1)); };
    if (f == "log(r)") b.log = true;
    else if (f[0] == 'r') b.power = exp(f), have_r = true;
    else if (f[0] == 't') b.t_exp = exp(f);
    else if (f[0] == 'v') b.v_exp = exp(f);
    else throw ParameterError("bad basis function '" + label + "'");
  }
  if (!have_r) throw ParameterError("basis function '" + label + "' needs an r power");
  return b;
}

int run_fit(const FitOptions& o) {
  std::vector<Sample> samples;
  std::vector<BasisFunction> basis;
  std::vector<std::optional<double>> predicted;
  if (o.source == "file") {
    if (o.samples.empty() || o.basis.empty()) throw ParameterError("--samples and --basis are required for file input");
    std::ifstream in(o.samples);
    if (!in) throw ParameterError("cannot read " + o.samples);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || !(std::isdigit(static_cast<unsigned char>(line[0])) || line[0] == '-' || line[0] == '.')) continue;
      std::vector<std::string> c = split_list(line);
      if (c.size() == 3) samples.push_back({parse_number(c[0]), parse_number(c[1]), 0.0, parse_number(c[2])});
      else if (c.size() == 4) samples.push_back({parse_number(c[0]), parse_number(c[1]), parse_number(c[2]), parse_number(c[3])});
      else throw ParameterError("sample rows need rad,t,value or rad,u,v,value");
    }
    for (const std::string& s : split_list(o.basis)) basis.push_back(parse_basis(s));
    for (const std::string& s : split_list(o.predict)) predicted.push_back(s == "-" ? std::nullopt : std::optional<double>(parse_number(s)));
  } else if (o.source == "ball-poisson") {
    // Tangent unit ball, chart kernel K(x, zeta(y')) J(y') along the ray of fixed t.
    const int n = o.n;
    if (o.t <= 0.0 || o.t >= 1.0) throw ParameterError("--t must lie in (0, 1)");
    KernelExpansion e = poisson_kernel_expansion(DomainSpec::ball(n, 1, o.grades), o.grades);
    const double cn = dimension_constant_value(n);
    for (int i = 0; i < o.count; ++i) {
      const double r = o.rmin * std::pow(o.rmax / o.rmin, i / (o.count - 1.0));
      const double xn = o.t * r, rho = std::sqrt(1.0 - o.t * o.t) * r;
      Point x = Point::Zero(n), zeta = Point::Zero(n);
      x(n - 1) = xn;
      zeta(0) = rho;
      zeta(n - 1) = 1.0 - std::sqrt(1.0 - rho * rho);
      const double jac = 1.0 / std::sqrt(1.0 - rho * rho);
      samples.push_back({r, o.t, 0.0, eval_poisson_tangent_ball(1.0, x, zeta) * jac});
    }
    for (const KernelTerm& t : e.terms) {
      if (t.log) continue;
      basis.push_back({t.power, false, 0, 0});
      predicted.push_back(cn * t.coeff.evaluate({}, o.t));
    }
    const int top = basis.empty() ? 0 : basis.back().power;
    for (int p = top + 1; p <= top + 3; ++p) {
      basis.push_back({p, false, 0, 0});
      predicted.push_back(std::nullopt);
    }
  } else {
    throw ParameterError("--source must be file or ball-poisson");
  }
  FitReport rep = fit_boundary_expansion(samples, basis, predicted);
  std::cout << rep.to_json().dump(2) << "\n";
  return 0;
}

int run_verify() {
  int failures = 0;
  for (const cli::Check& c : cli::run_published_checks()) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.pass) std::cout << ": " << c.detail, ++failures;
    std::cout << "\n";
  }
  std::cout << (failures ? std::to_string(failures) + " check(s) failed" : "all checks passed") << "\n";
  return failures ? kExitMismatch : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary expansions of Poisson and harmonic Bergman kernels"};
  app.require_subcommand(1);

  ExpandOptions ex;
  auto* expand = app.add_subcommand("expand", "symbol grades and kernel expansions at the chart centre");
  expand->add_option("target", ex.what, "poisson, bergman or lambda")->required()->check(CLI::IsMember({"poisson", "bergman", "lambda"}));
  expand->add_option("--n", ex.n, "dimension")->check(CLI::Range(2, kMaxDimension));
  expand->add_option("--jet", ex.jet, "jet a1,a2,... as symbols or exact rationals");
  expand->add_option("--grades", ex.grades, "number of grades N");
  expand->add_option("--weight", ex.weight, "x'-weight cap W (default 2N)");
  expand->add_option("--measure", ex.measure, "boundary measure: surface or chart");
  expand->add_option("--format", ex.format, "text or json");
  expand->add_option("--alpha", ex.alpha, "weight exponent for the Lambda symbol (exact rational)");
  expand->add_flag("--symbol", ex.symbol, "emit the symbol instead of the kernel");

  ClosedOptions co;
  auto* closed = app.add_subcommand("closed-form", "closed-form kernels on the half-space and the unit ball");
  closed->add_option("--kernel", co.kernel, "poisson, bergman or weighted");
  closed->add_option("--domain", co.domain, "halfspace or ball");
  closed->add_option("--x", co.x, "first point, comma separated")->required();
  closed->add_option("--y", co.y, "second point (boundary point for poisson)")->required();
  closed->add_option("--alpha", co.alpha, "weight exponent (> -1)");
  closed->add_option("--g0", co.g0, "weight factor e^{g0}");
  closed->add_option("--format", co.format, "text or csv");

  auto* verify = app.add_subcommand("verify", "regression suites");
  auto* published = verify->add_subcommand("paper", "published closed-form coefficients");
  verify->require_subcommand(1);

  auto* oracle = app.add_subcommand("oracle", "numerical oracles");
  oracle->require_subcommand(1);
  FdOptions fo;
  auto* fd = oracle->add_subcommand("fd", "Shortley-Weller finite differences on the unit disk");
  fd->add_option("--mode", fo.mode, "convergence or poisson-kernel");
  fd->add_option("--data", fo.data, "harmonic boundary data for convergence");
  fd->add_option("--mesh", fo.hs, "mesh widths, comma separated");
  fd->add_option("--eps", fo.eps, "bump radius for the Poisson kernel");
  fd->add_option("--rmin", fo.rmin, "smallest fitted distance");
  fd->add_option("--rmax", fo.rmax, "largest fitted distance");
  fd->add_option("--format", fo.format, "text or json");
  BallOptions bo;
  auto* ball = oracle->add_subcommand("ball", "spectral harmonic Bergman kernel of the unit ball");
  ball->add_option("--n", bo.n, "dimension")->check(CLI::Range(2, 8));
  ball->add_option("--lmax", bo.lmax, "spherical-harmonic cutoff")->check(CLI::NonNegativeNumber);
  ball->add_option("--x", bo.x, "first point")->required();
  ball->add_option("--y", bo.y, "second point")->required();
  ball->add_option("--format", bo.format, "text or json");

  FitOptions fi;
  auto* fit = app.add_subcommand("fit", "least-squares fit of kernel samples");
  fit->add_option("--source", fi.source, "file or ball-poisson");
  fit->add_option("--samples", fi.samples, "CSV with rad,t,value or rad,u,v,value");
  fit->add_option("--basis", fi.basis, "basis labels such as r^-2*t,r^0,r^1*log(r)");
  fit->add_option("--predict", fi.predict, "predicted coefficients ('-' for none)");
  fit->add_option("--n", fi.n, "dimension (ball-poisson)")->check(CLI::Range(2, 4));
  fit->add_option("--grades", fi.grades, "grades used for the prediction")->check(CLI::Range(0, 3));
  fit->add_option("--t", fi.t, "ray parameter x_n/|x| (ball-poisson)");
  fit->add_option("--rmin", fi.rmin, "smallest radius");
  fit->add_option("--rmax", fi.rmax, "largest radius");
  fit->add_option("--count", fi.count, "number of samples")->check(CLI::Range(4, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  Eigen::setNbThreads(thread_count());
  try {
    if (*expand) return run_expand(ex);
    if (*closed) return run_closed(co);
    if (*published) return run_verify();
    if (*fd) return run_fd(fo);
    if (*ball) return run_ball(bo);
    if (*fit) return run_fit(fi);
  } catch (const FitError& e) {
    std::cerr << "fit failed: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitConfig;
}
