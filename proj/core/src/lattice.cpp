#include "mfl/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mfl/errors.hpp"

namespace mfl {

const char* to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "dirichlet"; }

Lattice::Lattice(int n, std::array<double, 4> extent, Boundary bc, PositionForm origin)
    : n_(n), sites_(0), extent_(extent), h_{}, bc_(bc), origin_(origin) {
  if (n < 4) throw InvalidParameterError("lattice needs at least 4 sites per axis");
  for (std::size_t k = 0; k < 4; ++k) {
    if (!(extent[k] > 0.0) || !std::isfinite(extent[k])) throw InvalidParameterError("lattice extents must be positive");
    h_[k] = extent[k] / n;
  }
  const auto un = static_cast<std::size_t>(n);
  sites_ = un * un * un * un;
}

std::array<int, 4> Lattice::coords(std::size_t idx) const {
  std::array<int, 4> c{};
  for (int k = 3; k >= 0; --k) {
    c[static_cast<std::size_t>(k)] = static_cast<int>(idx % static_cast<std::size_t>(n_));
    idx /= static_cast<std::size_t>(n_);
  }
  return c;
}

PositionForm Lattice::position(std::size_t idx) const {
  const auto c = coords(idx);
  PositionForm p;
  for (std::size_t k = 0; k < 4; ++k) p.coords[k] = origin_.coords[k] + (c[k] + 0.5) * h_[k];
  return p;
}

std::optional<std::size_t> Lattice::neighbour(std::size_t idx, int mu, int step) const {
  auto c = coords(idx);
  int& v = c[static_cast<std::size_t>(mu)];
  v += step;
  if (v < 0 || v >= n_) {
    if (bc_ == Boundary::dirichlet) return std::nullopt;
    v = (v + n_) % n_;
  }
  return index(c);
}

bool Lattice::in_domain(std::size_t idx) const {
  if (bc_ == Boundary::periodic) return true;
  const auto c = coords(idx);
  return std::all_of(c.begin(), c.end(), [&](int v) { return v >= 1 && v <= n_ - 2; });
}

bool Lattice::in_core(std::size_t idx) const {
  if (bc_ == Boundary::periodic) return true;
  const auto c = coords(idx);
  return std::all_of(c.begin(), c.end(), [&](int v) { return v >= 2 && v <= n_ - 3; });
}

LatticeField::LatticeField(const Lattice& lat, GradeSet grades) : lat_(lat), grades_(grades), values_(lat.sites()) {}

void LatticeField::set(std::size_t i, const Multivector& v) {
  if (!grade_set(v).subset_of(grades_)) {
    throw GradeError("lattice value has grades " + grade_set(v).to_string() + " outside " + grades_.to_string());
  }
  values_[i] = v;
}

std::vector<unsigned> LatticeField::blades() const {
  std::vector<unsigned> b;
  for (unsigned mask = 0; mask < kBlades; ++mask) {
    if (grades_.contains_blade(mask)) b.push_back(mask);
  }
  return b;
}

double LatticeField::max_abs_free() const {
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (lat_.is_free(i)) m = std::max(m, max_abs(values_[i]));
  }
  return m;
}

LatticeField operator-(const LatticeField& a, const LatticeField& b) {
  LatticeField r(a.lattice(), a.grades() | b.grades());
  for (std::size_t i = 0; i < a.size(); ++i) r.set_restricted(i, a[i] - b[i]);
  return r;
}

LatticeField discretize(const FieldExpr& x, const Lattice& lat, GradeSet g) {
  if (!x.grades().subset_of(g)) {
    throw GradeError("discretize: field grades " + x.grades().to_string() + " outside " + g.to_string());
  }
  LatticeField f(lat, g);
  for (std::size_t i = 0; i < lat.sites(); ++i) f.set_restricted(i, x(lat.position(i)));
  return f;
}

namespace {

void require_flat(const LagrangianSpec& L, const char* what) {
  if (family(L.mode) != ModeFamily::flat) {
    throw ModeMismatchError(std::string(what) + ": lattice actions need a flat Lagrangian, got " + to_string(L.mode));
  }
}

/// Per-domain-site density inputs and derivatives.
struct SiteTerms {
  std::vector<std::array<Multivector, 4>> slots;  // (X, d, J, A_ext), empty X for non-domain sites
  std::vector<Multivector> momentum;             // P = d_d l, zero outside the domain
  std::vector<Multivector> dx;                   // d_X l restricted to the field grades
};

Multivector central_difference(const LatticeField& f, std::size_t i, int mu) {
  const Lattice& lat = f.lattice();
  const auto up = lat.neighbour(i, mu, +1);
  const auto dn = lat.neighbour(i, mu, -1);
  return (f[*up] - f[*dn]) * (0.5 / lat.spacing()[static_cast<std::size_t>(mu)]);
}

Multivector discrete_del(const LatticeField& f, std::size_t i, DelMode mode) {
  Multivector d;
  for (int mu = 0; mu < 4; ++mu) d += mode_product(gamma_up(mu), central_difference(f, i, mu), mode);
  return d;
}

SiteTerms site_terms(const LagrangianSpec& L, const LatticeField& f, bool derivatives) {
  const Lattice& lat = f.lattice();
  const DelMode mode = del_mode(L.mode);
  const GradeSet gd = del_grades(f.grades(), mode);
  SiteTerms t;
  t.slots.resize(lat.sites());
  if (derivatives) {
    t.momentum.resize(lat.sites());
    t.dx.resize(lat.sites());
  }
  for (std::size_t i = 0; i < lat.sites(); ++i) {
    if (!lat.in_domain(i)) continue;
    const PositionForm p = lat.position(i);
    t.slots[i] = {f[i], discrete_del(f, i, mode), L.current(p), L.potential(p)};
    if (derivatives) {
      t.momentum[i] = slot_derivative<double, 4>(L.density, t.slots[i], 1, gd);
      t.dx[i] = slot_derivative<double, 4>(L.density, t.slots[i], 0, f.grades());
    }
  }
  return t;
}

}  // namespace

double discrete_action(const LagrangianSpec& L, const LatticeField& f) {
  require_flat(L, "discrete_action");
  const Lattice& lat = f.lattice();
  const SiteTerms t = site_terms(L, f, false);
  double s = 0.0;
  for (std::size_t i = 0; i < lat.sites(); ++i) {
    if (lat.in_domain(i)) s += L.density(Slots<double>(t.slots[i]));
  }
  return s * lat.cell_volume();
}

LatticeField action_gradient(const LagrangianSpec& L, const LatticeField& f) {
  require_flat(L, "action_gradient");
  const Lattice& lat = f.lattice();
  const DelMode mode = del_mode(L.mode);
  const double vol = lat.cell_volume();
  const SiteTerms t = site_terms(L, f, true);
  const auto blades = f.blades();

  // raw[s][J] accumulates dS/dF_J(s) by the chain rule through every stencil that reads s.
  std::vector<Multivector> raw(lat.sites());
  for (std::size_t i = 0; i < lat.sites(); ++i) {
    if (!lat.in_domain(i)) continue;
    for (const unsigned j : blades) raw[i][j] += vol * t.dx[i][j] * blade_square_norm(j);
    for (int mu = 0; mu < 4; ++mu) {
      const double k = vol * 0.5 / lat.spacing()[static_cast<std::size_t>(mu)];
      const auto up = *lat.neighbour(i, mu, +1);
      const auto dn = *lat.neighbour(i, mu, -1);
      for (const unsigned j : blades) {
        const double c = scalar_product(mode_product(gamma_up(mu), Multivector::blade(j), mode), t.momentum[i]);
        raw[up][j] += k * c;
        raw[dn][j] -= k * c;
      }
    }
  }
  LatticeField g(lat, f.grades());
  for (std::size_t i = 0; i < lat.sites(); ++i) {
    if (!lat.is_free(i)) continue;
    Multivector m;
    for (const unsigned j : blades) m[j] = raw[i][j] * blade_square_norm(j);
    g.set_restricted(i, m);
  }
  return g;
}

LatticeField discrete_ele_residual(const LagrangianSpec& L, const LatticeField& f) {
  require_flat(L, "discrete_ele_residual");
  const Lattice& lat = f.lattice();
  const DelMode dual = dual_mode(del_mode(L.mode));
  const SiteTerms t = site_terms(L, f, true);
  LatticeField r(lat, f.grades());
  for (std::size_t i = 0; i < lat.sites(); ++i) {
    if (!lat.is_free(i)) continue;
    Multivector res = t.dx[i];
    for (int mu = 0; mu < 4; ++mu) {
      const auto up = *lat.neighbour(i, mu, +1);
      const auto dn = *lat.neighbour(i, mu, -1);
      const Multivector dp =
          (t.momentum[up] - t.momentum[dn]) * (0.5 / lat.spacing()[static_cast<std::size_t>(mu)]);
      res -= mode_product(gamma_up(mu), dp, dual);
    }
    r.set_restricted(i, res);
  }
  return r;
}

double gradient_residual_duality(const LagrangianSpec& L, const LatticeField& f) {
  const LatticeField g = action_gradient(L, f);
  const LatticeField r = discrete_ele_residual(L, f);
  const double vol = f.lattice().cell_volume();
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.lattice().is_free(i)) worst = std::max(worst, max_abs(g[i] - r[i] * vol));
  }
  return worst;
}

DiscreteGauss discrete_gauss(const LatticeField& v) {
  const Lattice& lat = v.lattice();
  const double vol = lat.cell_volume();
  const int n = lat.n();
  DiscreteGauss g;
  for (std::size_t i = 0; i < lat.sites(); ++i) {
    if (!lat.in_domain(i)) continue;
    double div = 0.0;
    for (int mu = 0; mu < 4; ++mu) div += central_difference(v, i, mu)[1u << mu];
    g.volume += div * vol;
  }
  if (lat.boundary() == Boundary::periodic) return g;
  // Telescoped central differences along mu leave the half-sums of the two outermost layers.
  for (std::size_t i = 0; i < lat.sites(); ++i) {
    const auto c = lat.coords(i);
    for (int mu = 0; mu < 4; ++mu) {
      bool transverse_interior = true;
      for (int k = 0; k < 4; ++k) {
        if (k != mu && (c[static_cast<std::size_t>(k)] < 1 || c[static_cast<std::size_t>(k)] > n - 2)) {
          transverse_interior = false;
        }
      }
      if (!transverse_interior) continue;
      const int along = c[static_cast<std::size_t>(mu)];
      const double w = 0.5 * vol / lat.spacing()[static_cast<std::size_t>(mu)];
      const double comp = v[i][1u << mu];
      if (along >= n - 2) g.flux += w * comp;
      if (along <= 1) g.flux -= w * comp;
    }
  }
  return g;
}

LatticeField maxwell_operator(const LatticeField& a) {
  const Lattice& lat = a.lattice();
  std::vector<Multivector> f(lat.sites());
  for (std::size_t i = 0; i < lat.sites(); ++i) {
    if (lat.in_domain(i)) f[i] = discrete_del(a, i, DelMode::curl);
  }
  LatticeField out(lat, GradeSet{1});
  for (std::size_t i = 0; i < lat.sites(); ++i) {
    if (!lat.is_free(i)) continue;
    Multivector r;
    for (int mu = 0; mu < 4; ++mu) {
      const auto up = *lat.neighbour(i, mu, +1);
      const auto dn = *lat.neighbour(i, mu, -1);
      r += left_contraction(gamma_up(mu), (f[up] - f[dn]) * (0.5 / lat.spacing()[static_cast<std::size_t>(mu)]));
    }
    out.set_restricted(i, r);
  }
  return out;
}

SolveResult solve_maxwell(const Lattice& lat, const LatticeField& j, double mu0, const SolveOptions& opt,
                          const LatticeField* boundary) {
  if (!(mu0 > 0.0)) throw InvalidParameterError("mu0 must be positive");
  std::vector<std::size_t> free_sites;
  for (std::size_t i = 0; i < lat.sites(); ++i) {
    if (lat.is_free(i)) free_sites.push_back(i);
  }
  const auto n = static_cast<Eigen::Index>(free_sites.size() * 4);
  static constexpr std::array<double, 4> kSign{1.0, -1.0, -1.0, -1.0};

  LatticeField base(lat, GradeSet{1});
  if (boundary != nullptr) {
    for (std::size_t i = 0; i < lat.sites(); ++i) {
      if (!lat.is_free(i)) base.set_restricted(i, (*boundary)[i]);
    }
  }
  auto embed = [&](const Eigen::VectorXd& x) {
    LatticeField a = base;
    for (std::size_t k = 0; k < free_sites.size(); ++k) {
      Multivector v;
      for (int nu = 0; nu < 4; ++nu) v[1u << nu] = x(static_cast<Eigen::Index>(k * 4) + nu);
      a.set_restricted(free_sites[k], v);
    }
    return a;
  };
  auto gather = [&](const LatticeField& f) {
    Eigen::VectorXd y(n);
    for (std::size_t k = 0; k < free_sites.size(); ++k) {
      for (int nu = 0; nu < 4; ++nu) {
        y(static_cast<Eigen::Index>(k * 4) + nu) = kSign[static_cast<std::size_t>(nu)] * f[free_sites[k]][1u << nu];
      }
    }
    return y;
  };

  // rhs = G (mu0 J - K A_boundary), with G = diag(eta) making G K symmetric.
  LatticeField rhs_field(lat, GradeSet{1});
  const LatticeField kb = maxwell_operator(base);
  for (std::size_t i = 0; i < lat.sites(); ++i) rhs_field.set_restricted(i, j[i] * mu0 - kb[i]);
  Eigen::VectorXd b = gather(rhs_field);

  std::function<void(Eigen::VectorXd&)> project = [](Eigen::VectorXd&) {};
  if (lat.boundary() == Boundary::periodic) {
    double scale = 0.0;
    Eigen::Vector4d sum = Eigen::Vector4d::Zero();
    for (Eigen::Index k = 0; k < n; ++k) {
      sum(k % 4) += b(k);
      scale += std::abs(b(k));
    }
    if (sum.cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale)) {
      throw SolverError("periodic Maxwell solve: source has nonzero site sum (incompatible with constant null space)");
    }
    project = [](Eigen::VectorXd& v) {
      const Eigen::Index m = v.size() / 4;
      Eigen::Map<Eigen::Matrix<double, 4, Eigen::Dynamic>> blocks(v.data(), 4, m);
      const Eigen::Vector4d mean = blocks.rowwise().mean();
      blocks.colwise() -= mean;
    };
  }

  auto apply = [&](const Eigen::VectorXd& x) {
    LatticeField a(lat, GradeSet{1});
    for (std::size_t k = 0; k < free_sites.size(); ++k) {
      Multivector v;
      for (int nu = 0; nu < 4; ++nu) v[1u << nu] = x(static_cast<Eigen::Index>(k * 4) + nu);
      a.set_restricted(free_sites[k], v);
    }
    return gather(maxwell_operator(a));
  };

  const MinresResult mr = minres(apply, b, project, MinresOptions{opt.rel_tol, opt.max_iterations});
  const double bnorm = b.norm();
  const double true_rel = bnorm == 0.0 ? 0.0 : (b - apply(mr.x)).norm() / bnorm;
  if (mr.least_squares && true_rel > std::max(1e-8, 100.0 * opt.rel_tol)) {
    throw SolverError("Maxwell solve: source is incompatible with the operator null space (not conserved); "
                      "least-squares relative residual " + std::to_string(true_rel));
  }
  if ((!mr.converged && !mr.least_squares) || true_rel > std::max(1e-8, 100.0 * opt.rel_tol)) {
    throw SolverError("Maxwell solve did not converge: relative residual " + std::to_string(true_rel) + " after " +
                      std::to_string(mr.iterations) + " iterations");
  }
  return SolveResult{embed(mr.x), mr.iterations, true_rel};
}

namespace {

void write_le_double(std::ostream& os, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  char buf[8];
  std::memcpy(buf, &bits, 8);
  os.write(buf, 8);
}

}  // namespace

void export_field(const LatticeField& f, const std::filesystem::path& path) {
  const Lattice& lat = f.lattice();
  const auto blades = f.blades();
  std::ofstream data(path, std::ios::binary | std::ios::trunc);
  if (!data) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (const unsigned b : blades) write_le_double(data, f[i][b]);
  }
  data.close();
  if (!data) throw std::runtime_error("write failed: " + path.string());

  std::filesystem::path hdr = path;
  hdr += ".hdr";
  std::ofstream h(hdr, std::ios::trunc);
  if (!h) throw std::runtime_error("cannot open " + hdr.string() + " for writing");
  h.precision(17);
  h << "format mfl-lattice-field 1\n";
  h << "dims " << lat.n() << ' ' << lat.n() << ' ' << lat.n() << ' ' << lat.n() << '\n';
  h << "sites " << lat.sites() << '\n';
  h << "grades " << f.grades().to_string() << '\n';
  h << "components " << blades.size() << '\n';
  h << "blades";
  for (const unsigned b : blades) h << ' ' << blade_name(b);
  h << '\n';
  h << "spacing " << lat.spacing()[0] << ' ' << lat.spacing()[1] << ' ' << lat.spacing()[2] << ' '
    << lat.spacing()[3] << '\n';
  h << "origin " << lat.origin().coords[0] << ' ' << lat.origin().coords[1] << ' ' << lat.origin().coords[2] << ' '
    << lat.origin().coords[3] << '\n';
  h << "boundary " << to_string(lat.boundary()) << '\n';
  h << "dtype float64 little-endian\n";
  h << "order site-major component-minor\n";
  h.close();
  if (!h) throw std::runtime_error("write failed: " + hdr.string());
}

}  // namespace mfl
