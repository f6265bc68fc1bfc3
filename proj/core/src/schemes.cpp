#include "oscillab/schemes.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "oscillab/errors.hpp"

namespace oscillab::schemes {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<double> parse_coefficients(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size() ||
        !std::isfinite(v)) {
      throw InvalidInput("bad scheme coefficient '" + std::string(item) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

std::string join(const std::vector<double>& c) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  return os.str();
}

bool parse_order(std::string_view digits, int& m) {
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
  return !digits.empty() && ec == std::errc{} && ptr == digits.data() + digits.size();
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidInput(std::string("invalid discretization: ") + what + " must be positive");
  }
}

}  // namespace

RationalScheme::RationalScheme(std::string name, std::vector<double> p_coeffs,
                               std::vector<double> q_coeffs)
    : name_(std::move(name)), p_(std::move(p_coeffs)), q_(std::move(q_coeffs)) {
  if (p_.coeffs().empty() || q_.coeffs().empty()) {
    throw InvalidInput("scheme '" + name_ + "': empty coefficient list");
  }
  const double q0 = q_(0.0);
  if (q0 == 0.0) throw InvalidInput("scheme '" + name_ + "': q(0) must be nonzero");
  if (std::abs(p_(0.0) / q0 - 1.0) > 1e-12) {
    throw InvalidInput("scheme '" + name_ + "': inconsistent, R(0) = p(0)/q(0) must equal 1");
  }
}

std::string RationalScheme::describe() const {
  return "p: " + join(p_.coeffs()) + " / q: " + join(q_.coeffs());
}

RationalScheme taylor_scheme(int m) {
  if (m < 1 || m > 12) throw InvalidInput("taylor order must be in [1, 12]");
  std::vector<double> p(static_cast<std::size_t>(m) + 1);
  double factorial = 1.0;
  for (int i = 0; i <= m; ++i) {
    if (i > 0) factorial *= i;
    p[static_cast<std::size_t>(i)] = 1.0 / factorial;
  }
  return RationalScheme("taylor(" + std::to_string(m) + ")", std::move(p), {1.0});
}

RationalScheme builtin_scheme(std::string_view name) {
  name = trim(name);
  if (name == "forward_euler") return RationalScheme("forward_euler", {1.0, 1.0}, {1.0});
  if (name == "backward_euler") return RationalScheme("backward_euler", {1.0}, {1.0, -1.0});
  if (name == "crank_nicolson") {
    return RationalScheme("crank_nicolson", {1.0, 0.5}, {1.0, -0.5});
  }
  int m = 0;
  if (name.starts_with("taylor(") && name.ends_with(")") &&
      parse_order(name.substr(7, name.size() - 8), m)) {
    return taylor_scheme(m);
  }
  if (name.starts_with("taylor") && parse_order(name.substr(6), m)) return taylor_scheme(m);
  if (name.starts_with("rk") && parse_order(name.substr(2), m)) return taylor_scheme(m);
  throw InvalidInput("unknown scheme '" + std::string(name) + "'");
}

RationalScheme parse_scheme(std::string_view text) {
  text = trim(text);
  if (!text.starts_with("p:")) return builtin_scheme(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) throw InvalidInput("custom scheme needs 'p: ... / q: ...'");
  const auto p_part = trim(text.substr(2, slash - 2));
  auto q_part = trim(text.substr(slash + 1));
  if (!q_part.starts_with("q:")) throw InvalidInput("custom scheme needs 'q:' after '/'");
  q_part = trim(q_part.substr(2));
  return RationalScheme("custom", parse_coefficients(p_part), parse_coefficients(q_part));
}

std::vector<RationalScheme> table_schemes() {
  return {builtin_scheme("forward_euler"), taylor_scheme(3), taylor_scheme(5),
          builtin_scheme("crank_nicolson")};
}

std::vector<RationalScheme> all_builtin_schemes() {
  auto v = table_schemes();
  v.push_back(builtin_scheme("backward_euler"));
  v.push_back(taylor_scheme(2));
  v.push_back(taylor_scheme(4));
  return v;
}

double amplification(const RationalScheme& scheme, double z) {
  const double den = scheme.denominator()(z);
  double scale = 0.0;
  double zp = 1.0;
  for (double c : scheme.denominator().coeffs()) {
    scale += std::abs(c) * zp;
    zp *= std::abs(z);
  }
  if (std::abs(den) <= 16.0 * std::numeric_limits<double>::epsilon() * scale) {
    throw PoleError("amplification of '" + scheme.name() + "' has a pole at z = " +
                        std::to_string(z),
                    z);
  }
  return scheme.numerator()(z) / den;
}

Discretization Discretization::from_time_step(std::size_t k, double dx, double dt, double delta,
                                              double rho) {
  if (k == 0) throw InvalidInput("invalid grid: k must be at least 1");
  require_positive(dx, "dx");
  require_positive(dt, "dt");
  require_positive(delta, "delta");
  if (!std::isfinite(rho)) throw InvalidInput("invalid discretization: rho must be finite");
  return Discretization{k, dx, dt, delta, rho, delta * dt / (dx * dx), rho * dt};
}

Discretization Discretization::from_ratio(std::size_t k, double r, double dx, double delta,
                                          double rho) {
  if (k == 0) throw InvalidInput("invalid grid: k must be at least 1");
  require_positive(r, "r");
  require_positive(dx, "dx");
  require_positive(delta, "delta");
  if (!std::isfinite(rho)) throw InvalidInput("invalid discretization: rho must be finite");
  const double dt = r * dx * dx / delta;
  return Discretization{k, dx, dt, delta, rho, r, rho * dt};
}

Discretization Discretization::unit(std::size_t k, double r, double rho) {
  return from_ratio(k, r, 1.0, 1.0, rho);
}

Discretization Discretization::without_reaction() const {
  Discretization d = *this;
  d.rho = 0.0;
  d.sigma = 0.0;
  return d;
}

SchemeOperator::SchemeOperator(const RationalScheme& scheme, std::size_t k, double r,
                               double sigma)
    : p_(scheme.numerator()),
      q_(scheme.denominator()),
      g_((scheme.numerator() - scheme.denominator()).shift_down()),
      r_(r),
      generator_{Vector(k, -2.0 * r - sigma), Vector(k > 0 ? k - 1 : 0, r)} {
  if (k == 0) throw InvalidInput("invalid grid: k must be at least 1");
  const int dq = q_.degree();
  if (dq == 0) {
    denominator_ = q_.coeffs()[0];
  } else if (dq == 1) {
    const double q0 = q_.coeffs()[0];
    const double q1 = q_.coeffs()[1];
    Vector diag(k);
    for (std::size_t i = 0; i < k; ++i) diag[i] = q0 + q1 * generator_.diag[i];
    Vector band(k - 1, q1 * r);
    denominator_.emplace<TridiagonalSolver>(band, std::move(diag), band);
  } else {
    Matrix qa(k, k);
    Vector e(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      e[j] = 1.0;
      qa.set_column(j, poly_apply(q_, e));
      e[j] = 0.0;
    }
    denominator_.emplace<LuFactorization>(std::move(qa));
  }
}

SchemeOperator::SchemeOperator(const RationalScheme& scheme, const Discretization& disc)
    : SchemeOperator(scheme, disc.k, disc.r, disc.sigma) {}

Vector SchemeOperator::poly_apply(const Polynomial& poly, std::span<const double> v) const {
  const auto& c = poly.coeffs();
  Vector y(v.size(), 0.0);
  for (std::size_t i = c.size(); i-- > 0;) {
    if (i + 1 < c.size()) y = generator_.multiply(y);
    for (std::size_t n = 0; n < v.size(); ++n) y[n] += c[i] * v[n];
  }
  return y;
}

Vector SchemeOperator::solve_denominator(Vector rhs) const {
  if (const auto* q0 = std::get_if<double>(&denominator_)) {
    if (*q0 != 1.0)
      for (double& x : rhs) x /= *q0;
    return rhs;
  }
  if (const auto* tri = std::get_if<TridiagonalSolver>(&denominator_)) return tri->solve(rhs);
  return std::get<LuFactorization>(denominator_).solve(rhs);
}

Vector SchemeOperator::apply(std::span<const double> u) const {
  if (u.size() != size()) throw InvalidInput("scheme operator: state length mismatch");
  return solve_denominator(poly_apply(p_, u));
}

Vector SchemeOperator::boundary_vector(const BoundaryData& bc) const {
  const std::size_t k = size();
  Vector b(k, 0.0);
  b.front() += r_ * bc.left;
  b.back() += r_ * bc.right;
  return solve_denominator(poly_apply(g_, b));
}

Matrix SchemeOperator::dense() const {
  const std::size_t k = size();
  Matrix m(k, k);
  Vector e(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    e[j] = 1.0;
    m.set_column(j, apply(e));
    e[j] = 0.0;
  }
  return m;
}

Matrix time_step_matrix(const RationalScheme& scheme, const Discretization& disc) {
  return SchemeOperator(scheme, disc).dense();
}

Vector boundary_vector(const RationalScheme& scheme, const Discretization& disc,
                       const BoundaryData& bc) {
  if (!std::isfinite(bc.left) || !std::isfinite(bc.right)) {
    throw InvalidInput("boundary values must be finite");
  }
  return SchemeOperator(scheme, disc).boundary_vector(bc);
}

lattice::Spectrum scheme_spectrum(const RationalScheme& scheme, const Discretization& disc) {
  auto spec = lattice::analytic_eigenvalues(disc.k);
  Vector values(disc.k);
  for (std::size_t j = 0; j < disc.k; ++j) {
    const double z = disc.r * spec.lambdas[j] - disc.sigma;
    try {
      values[j] = amplification(scheme, z);
    } catch (const PoleError& e) {
      throw PoleError("amplification pole at mode j = " + std::to_string(j + 1) + " (z = " +
                          std::to_string(z) + ")",
                      z, j + 1);
    }
  }
  spec.scheme_values = std::move(values);
  return spec;
}

}  // namespace oscillab::schemes
