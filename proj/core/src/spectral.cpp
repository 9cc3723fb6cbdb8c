#include "cmvweyl/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "cmvweyl/errors.hpp"
#include "cmvweyl/transfer.hpp"

namespace cmv {

double CircleMeasure::total_mass() const {
  double m = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!density.empty()) {
    double d = std::accumulate(density.begin(), density.end(), 0.0);
    m += d / static_cast<double>(density.size());
  }
  return m;
}

Complex CircleMeasure::moment(int j) const {
  Complex acc(0.0);
  for (std::size_t i = 0; i < angles.size(); ++i)
    acc += weights[i] * std::polar(1.0, j * angles[i]);
  if (!density.empty()) {
    const int n = static_cast<int>(density.size());
    for (int i = 0; i < n; ++i)
      acc += density[static_cast<std::size_t>(i)] / n *
             std::polar(1.0, j * kTwoPi * i / n);
  }
  return acc;
}

Complex CircleMeasure::herglotz(Complex z) const {
  Complex acc(0.0);
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const Complex zeta = std::polar(1.0, angles[i]);
    acc += weights[i] * (zeta + z) / (zeta - z);
  }
  if (!density.empty()) {
    const int n = static_cast<int>(density.size());
    for (int i = 0; i < n; ++i) {
      const Complex zeta = std::polar(1.0, kTwoPi * i / n);
      acc += density[static_cast<std::size_t>(i)] / n * (zeta + z) /
             (zeta - z);
    }
  }
  return acc;
}

CircleMeasure CircleMeasure::single_atom(double theta, double weight) {
  CircleMeasure mu;
  mu.angles = {wrap_angle(theta)};
  mu.weights = {weight};
  return mu;
}

CircleMeasure CircleMeasure::lebesgue_atoms(int n) {
  CircleMeasure mu;
  mu.angles.resize(static_cast<std::size_t>(n));
  mu.weights.assign(static_cast<std::size_t>(n), 1.0 / n);
  for (int i = 0; i < n; ++i)
    mu.angles[static_cast<std::size_t>(i)] = kTwoPi * i / n;
  return mu;
}

void CircleMeasure::save_json(const std::string& path) const {
  nlohmann::json j;
  auto& atoms = j["atoms"];
  atoms = nlohmann::json::array();
  for (std::size_t i = 0; i < angles.size(); ++i)
    atoms.push_back({angles[i], weights[i]});
  if (!density.empty()) {
    j["density"]["grid_size"] = density.size();
    j["density"]["values"] = density;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write measure file: " + path);
  out << j.dump(2) << "\n";
}

CircleMeasure CircleMeasure::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open measure file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed measure file " + path + ": " + e.what());
  }
  CircleMeasure mu;
  if (!j.contains("atoms") || !j["atoms"].is_array())
    throw ParseError("measure file lacks an atoms array: " + path);
  for (const auto& a : j["atoms"]) {
    if (!a.is_array() || a.size() != 2)
      throw ParseError("measure atom must be [theta, weight]: " + path);
    const double th = wrap_angle(a[0].get<double>());
    const double w = a[1].get<double>();
    if (w <= 0.0) throw ParseError("nonpositive atom weight in " + path);
    mu.angles.push_back(th);
    mu.weights.push_back(w);
  }
  if (j.contains("density")) {
    mu.density = j["density"]["values"].get<std::vector<double>>();
    if (j["density"].contains("grid_size") &&
        j["density"]["grid_size"].get<std::size_t>() != mu.density.size())
      throw ParseError("density grid_size mismatch in " + path);
  }
  // keep atoms sorted by angle
  std::vector<std::size_t> order(mu.angles.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mu.angles[a] < mu.angles[b];
  });
  CircleMeasure sorted;
  sorted.density = mu.density;
  for (std::size_t i : order) {
    sorted.angles.push_back(mu.angles[i]);
    sorted.weights.push_back(mu.weights[i]);
  }
  return sorted;
}

namespace {

struct EigenSystem {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;  // orthonormal columns
};

// Schur form of a (numerically) normal matrix: T is diagonal up to rounding
// and the Schur basis doubles as an orthonormal eigenbasis.
EigenSystem unitary_eigensystem(const BandedUnitary& u) {
  if (u.unitarity_residual() > 1e-8)
    throw PreconditionError("operator is not unitary within 1e-8");
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u.mat);
  EigenSystem sys;
  sys.values = schur.matrixT().diagonal();
  sys.vectors = schur.matrixU();
  return sys;
}

}  // namespace

CircleMeasure measure_from_operator(const BandedUnitary& u, int k0) {
  if (!u.contains_site(k0))
    throw DomainError("site outside operator window: " + std::to_string(k0));
  const EigenSystem sys = unitary_eigensystem(u);
  const int row = u.row_of(k0);
  const int n = u.size();

  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double w = std::norm(sys.vectors(row, j));
    if (w < 1e-14) continue;
    atoms.emplace_back(wrap_angle(std::arg(sys.values(j))), w);
  }
  std::sort(atoms.begin(), atoms.end());

  CircleMeasure mu;
  for (const auto& [th, w] : atoms) {
    if (!mu.angles.empty() && th - mu.angles.back() < 1e-12) {
      mu.weights.back() += w;  // coalesce numerically equal eigenangles
    } else {
      mu.angles.push_back(th);
      mu.weights.push_back(w);
    }
  }
  const double mass = mu.total_mass();
  for (auto& w : mu.weights) w /= mass;
  return mu;
}

namespace {

// Shared quadrature view: atoms plus density nodes.
struct Quadrature {
  std::vector<Complex> points;
  std::vector<double> weights;

  explicit Quadrature(const CircleMeasure& mu) {
    points.reserve(mu.angles.size() + mu.density.size());
    weights.reserve(points.capacity());
    for (std::size_t i = 0; i < mu.angles.size(); ++i) {
      points.push_back(std::polar(1.0, mu.angles[i]));
      weights.push_back(mu.weights[i]);
    }
    const int n = static_cast<int>(mu.density.size());
    for (int i = 0; i < n; ++i) {
      points.push_back(std::polar(1.0, kTwoPi * i / n));
      weights.push_back(mu.density[static_cast<std::size_t>(i)] / n);
    }
  }

  std::size_t size() const { return points.size(); }

  Eigen::VectorXcd sample(const LaurentPolynomial& f) const {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i)
      v(static_cast<Eigen::Index>(i)) = f.eval(points[i]);
    return v;
  }

  Complex dot(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) const {
    Complex acc(0.0);
    for (std::size_t i = 0; i < size(); ++i)
      acc += weights[i] *
             std::conj(f(static_cast<Eigen::Index>(i))) *
             g(static_cast<Eigen::Index>(i));
    return acc;
  }
};

}  // namespace

Complex inner_product(const LaurentPolynomial& f, const LaurentPolynomial& g,
                      const CircleMeasure& mu) {
  const Quadrature quad(mu);
  return quad.dot(quad.sample(f), quad.sample(g));
}

Eigen::MatrixXcd gram_matrix(const std::vector<LaurentPolynomial>& polys,
                             const CircleMeasure& mu) {
  const Quadrature quad(mu);
  const Eigen::Index n = static_cast<Eigen::Index>(polys.size());
  std::vector<Eigen::VectorXcd> samples;
  samples.reserve(polys.size());
  for (const auto& p : polys) samples.push_back(quad.sample(p));
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = quad.dot(samples[static_cast<std::size_t>(i)],
                         samples[static_cast<std::size_t>(j)]);
  return g;
}

namespace {

bool site_odd(int k) { return ((k % 2) + 2) % 2 == 1; }

// Monomial orders for Gram-Schmidt, indexed from the reference site outward.
// exp_a: 0, 1, -1, 2, -2, ...   exp_c: 1, 0, 2, -1, 3, -2, ...
int exp_a(int j) { return (j % 2 == 1) ? (j + 1) / 2 : -j / 2; }
int exp_b(int j) { return -exp_a(j); }
int exp_c(int j) { return (j % 2 == 0) ? j / 2 + 1 : -(j - 1) / 2; }

struct MonomialOrder {
  int (*exponent)(int);
  int sign_parity;  // 0: all +1; 1: (-1)^j; 2: (-1)^(j+1)
  double sign(int j) const {
    if (sign_parity == 0) return 1.0;
    const double s = (j % 2 == 0) ? 1.0 : -1.0;
    return sign_parity == 1 ? s : -s;
  }
};

MonomialOrder monomial_order(PolyFamily family, bool k0_odd) {
  switch (family) {
    case PolyFamily::p_plus:
      return k0_odd ? MonomialOrder{exp_c, 0} : MonomialOrder{exp_a, 0};
    case PolyFamily::r_plus:
      return k0_odd ? MonomialOrder{exp_a, 0} : MonomialOrder{exp_b, 0};
    case PolyFamily::p_minus:
      return k0_odd ? MonomialOrder{exp_a, 1} : MonomialOrder{exp_c, 2};
    case PolyFamily::r_minus:
      return k0_odd ? MonomialOrder{exp_b, 2} : MonomialOrder{exp_a, 1};
  }
  throw DomainError("unknown polynomial family");
}

}  // namespace

std::vector<LaurentPolynomial> gram_schmidt_opuc(const CircleMeasure& mu,
                                                 int k0, int n,
                                                 PolyFamily family) {
  if (n < 1) throw SizeError("gram_schmidt_opuc needs n >= 1");
  const Quadrature quad(mu);
  if (quad.size() < static_cast<std::size_t>(n))
    throw RankError("measure has fewer effective atoms than requested rank",
                    static_cast<int>(quad.size()));
  const MonomialOrder order = monomial_order(family, site_odd(k0));

  std::vector<LaurentPolynomial> polys;
  std::vector<Eigen::VectorXcd> samples;
  polys.reserve(static_cast<std::size_t>(n));
  samples.reserve(static_cast<std::size_t>(n));

  for (int j = 0; j < n; ++j) {
    LaurentPolynomial cand =
        LaurentPolynomial::monomial(order.sign(j), order.exponent(j));
    Eigen::VectorXcd v = quad.sample(cand);
    const double initial = std::sqrt(std::abs(quad.dot(v, v).real()));
    // modified Gram-Schmidt with one reorthogonalization pass
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        const Complex proj = quad.dot(samples[static_cast<std::size_t>(i)], v);
        v -= proj * samples[static_cast<std::size_t>(i)];
        cand -= proj * polys[static_cast<std::size_t>(i)];
      }
    }
    const double nrm = std::sqrt(std::abs(quad.dot(v, v).real()));
    if (!(nrm > 1e-13 * std::max(initial, 1.0)))
      throw RankError("rank deficiency during Gram-Schmidt", j);
    v /= nrm;
    cand *= Complex(1.0 / nrm);
    cand.prune(1e-14);
    polys.push_back(std::move(cand));
    samples.push_back(std::move(v));
  }
  return polys;
}

ReconstructionResult reconstruct_verblunsky(const CircleMeasure& mu, int k0,
                                            int n, Side side) {
  if (n < 1) throw SizeError("reconstruct_verblunsky needs n >= 1");
  const Quadrature quad(mu);
  if (quad.size() < static_cast<std::size_t>(n) + 2)
    throw RankError("measure needs at least n + 2 atoms",
                    static_cast<int>(quad.size()));

  const auto p_family =
      gram_schmidt_opuc(mu, k0, n + 1,
                        side == Side::plus ? PolyFamily::p_plus
                                           : PolyFamily::p_minus);
  const auto r_family =
      gram_schmidt_opuc(mu, k0, n + 1,
                        side == Side::plus ? PolyFamily::r_plus
                                           : PolyFamily::r_minus);
  const MonomialOrder p_order = monomial_order(
      side == Side::plus ? PolyFamily::p_plus : PolyFamily::p_minus,
      site_odd(k0));

  ReconstructionResult out;
  out.coefficients.set_generator_tag("reconstructed");
  for (int j = 1; j <= n; ++j) {
    // Step j recovers alpha at `site` from the polynomials one site closer
    // to the lattice end (site - 1): family index j-1 on the plus side,
    // index j on the minus side, where indices count outward from k0.
    const int site = (side == Side::plus) ? k0 + j : k0 - j + 1;
    const std::size_t lower = static_cast<std::size_t>(j - 1);
    const std::size_t upper = static_cast<std::size_t>(j);
    const std::size_t near = (side == Side::plus) ? lower : upper;

    const LaurentPolynomial& p_near = p_family[near];
    const LaurentPolynomial& r_near = r_family[near];
    Complex alpha;
    if (site_odd(site)) {
      alpha = -inner_product(p_near, r_near.shifted(1), mu);
    } else {
      alpha = -inner_product(r_near, p_near, mu);
    }
    if (std::abs(alpha) >= 1.0 - 1e-10)
      throw RankError(
          "ill-conditioned reconstruction at site " + std::to_string(site) +
              " (measure has too few effective atoms)",
          j - 1);

    // rho from the new-monomial cancellation in the recursion step that
    // produces the farther polynomial from the nearer pair.
    const int new_exp = p_order.exponent(j);
    const LaurentPolynomial& p_far = p_family[upper];
    const LaurentPolynomial r_src =
        site_odd(site) ? r_family[lower].shifted(1) : r_family[lower];
    const Complex num = r_src.coeff(new_exp);
    const Complex den = p_far.coeff(new_exp);
    double rho_hat = 0.0;
    if (std::abs(den) > 0.0) rho_hat = (num / den).real();

    out.sites.push_back(site);
    out.coefficients.set(site, alpha);
    out.rho.push_back(rho_hat);
  }
  return out;
}

Eigen::Matrix2cd MatrixMeasure2::total() const {
  Eigen::Matrix2cd t = Eigen::Matrix2cd::Zero();
  for (const auto& w : weights) t += w;
  return t;
}

Eigen::Matrix2cd MatrixMeasure2::herglotz(Complex z) const {
  Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const Complex zeta = std::polar(1.0, angles[i]);
    acc += weights[i] * ((zeta + z) / (zeta - z));
  }
  return acc;
}

MatrixMeasure2 MatrixMeasure2::transposed() const {
  MatrixMeasure2 t;
  t.angles = angles;
  t.weights.reserve(weights.size());
  for (const auto& w : weights) t.weights.push_back(w.transpose());
  return t;
}

MatrixMeasure2 matrix_measure(const BandedUnitary& u, int k) {
  if (!u.contains_site(k - 1) || !u.contains_site(k))
    throw DomainError("matrix measure needs sites k-1 and k inside window");
  const EigenSystem sys = unitary_eigensystem(u);
  const int r0 = u.row_of(k - 1);
  const int r1 = u.row_of(k);

  MatrixMeasure2 mm;
  for (int j = 0; j < u.size(); ++j) {
    Eigen::Vector2cd comp;
    comp << sys.vectors(r0, j), sys.vectors(r1, j);
    const Eigen::Matrix2cd w = comp * comp.adjoint();
    if (w.cwiseAbs().maxCoeff() < 1e-14) continue;
    mm.angles.push_back(wrap_angle(std::arg(sys.values(j))));
    mm.weights.push_back(w);
  }
  return mm;
}

double full_lattice_basis_check(const BandedUnitary& u,
                                const VerblunskySequence& seq, int k0,
                                int range, bool p_system) {
  const MatrixMeasure2 omega_raw = matrix_measure(u, k0);
  const MatrixMeasure2 omega = p_system ? omega_raw.transposed() : omega_raw;

  const SolutionFamily fam(seq, k0, k0 - range, k0 + range, Side::plus);
  const DerivedCoefficients d = derive_coefficients(seq.at(k0));
  const Complex rho(d.rho);

  // Parity-dependent mixing of the (q, p) and (s, r) pairs into the
  // two-component orthonormal systems.
  Eigen::Matrix2cd mix_r, mix_p;
  if (fam.k0_odd()) {
    mix_r << rho, rho, -d.b, d.a;
    mix_p << -rho, rho, std::conj(d.b), std::conj(d.a);
  } else {
    mix_r << -rho, rho, std::conj(d.b), std::conj(d.a);
    mix_p << rho, rho, -d.b, d.a;
  }
  mix_r *= 0.5;
  mix_p *= 0.5;

  const int lo = k0 - range, hi = k0 + range;
  const std::size_t n_atoms = omega.angles.size();
  const int n_sites = hi - lo + 1;

  // components[site - lo][atom] = (X0, X1) at that atom
  std::vector<std::vector<Eigen::Vector2cd>> comp(
      static_cast<std::size_t>(n_sites));
  for (int k = lo; k <= hi; ++k) {
    auto& c = comp[static_cast<std::size_t>(k - lo)];
    c.resize(n_atoms);
    for (std::size_t a = 0; a < n_atoms; ++a) {
      const Complex zeta = std::polar(1.0, omega.angles[a]);
      Eigen::Vector2cd in;
      Complex scale(1.0);
      if (p_system) {
        in << fam.q(k).eval(zeta), fam.p(k).eval(zeta);
        if (fam.k0_odd()) scale = 1.0 / zeta;  // prefactor 1/(2 zeta)
      } else {
        in << fam.s(k).eval(zeta), fam.r(k).eval(zeta);
      }
      c[a] = (p_system ? mix_p : mix_r) * in * scale;
    }
  }

  double worst = 0.0;
  for (int k = lo; k <= hi; ++k) {
    for (int kp = lo; kp <= hi; ++kp) {
      Complex acc(0.0);
      const auto& ck = comp[static_cast<std::size_t>(k - lo)];
      const auto& ckp = comp[static_cast<std::size_t>(kp - lo)];
      for (std::size_t a = 0; a < n_atoms; ++a)
        acc += (ck[a].adjoint() * omega.weights[a] * ckp[a])(0, 0);
      const Complex expect = (k == kp) ? Complex(1.0) : Complex(0.0);
      worst = std::max(worst, std::abs(acc - expect));
    }
  }
  return worst;
}

}  // namespace cmv
