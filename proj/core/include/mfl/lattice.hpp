#pragma once

// Lattice discretization of the action: discrete action, its exact gradient,
// the discrete Euler-Lagrange residual, discrete Gauss, and the Maxwell solve.
//
// Sites sit at cell centres origin + (i + 1/2) h. Derivatives are central
// differences. Periodic lattices sum the action over every site with
// wraparound. Dirichlet lattices sum it over the interior sites 1..N-2 of every
// axis; their stencils read the fixed boundary layer, which never moves.
// The multivector action gradient sum_J e^J dS/dF_J equals +cellvol times the
// discrete residual; the residual applies the transposed stencils.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mfl/field.hpp"
#include "mfl/lagrangian.hpp"
#include "mfl/minres.hpp"
#include "mfl/multivector.hpp"

namespace mfl {

enum class Boundary { dirichlet, periodic };

const char* to_string(Boundary b);

class Lattice {
 public:
  /// Throws InvalidParameterError unless n >= 4 and every extent is positive and finite.
  Lattice(int n, std::array<double, 4> extent, Boundary bc, PositionForm origin = {});

  int n() const { return n_; }
  std::size_t sites() const { return sites_; }
  Boundary boundary() const { return bc_; }
  const std::array<double, 4>& extent() const { return extent_; }
  const std::array<double, 4>& spacing() const { return h_; }
  const PositionForm& origin() const { return origin_; }
  double cell_volume() const { return h_[0] * h_[1] * h_[2] * h_[3]; }

  std::size_t index(const std::array<int, 4>& i) const {
    return static_cast<std::size_t>(((i[0] * n_ + i[1]) * n_ + i[2]) * n_ + i[3]);
  }
  std::array<int, 4> coords(std::size_t idx) const;
  PositionForm position(std::size_t idx) const;
  /// Neighbour along axis mu at offset +1 or -1; wraps for periodic, nullopt off the grid.
  std::optional<std::size_t> neighbour(std::size_t idx, int mu, int step) const;
  /// Site where the discrete action is accumulated (all sites periodic, 1..N-2 per axis dirichlet).
  bool in_domain(std::size_t idx) const;
  /// Site whose value is free (not in the dirichlet boundary layer).
  bool is_free(std::size_t idx) const { return bc_ == Boundary::periodic || in_domain(idx); }
  /// Sites 2..N-3 per axis (dirichlet) where every stencil reads only domain momenta; all sites periodic.
  bool in_core(std::size_t idx) const;

 private:
  int n_;
  std::size_t sites_;
  std::array<double, 4> extent_;
  std::array<double, 4> h_;
  Boundary bc_;
  PositionForm origin_;
};

class LatticeField {
 public:
  LatticeField(const Lattice& lat, GradeSet grades);

  const Lattice& lattice() const { return lat_; }
  GradeSet grades() const { return grades_; }
  std::size_t size() const { return values_.size(); }

  const Multivector& operator[](std::size_t i) const { return values_[i]; }
  /// Throws GradeError if v carries grades outside the declared set.
  void set(std::size_t i, const Multivector& v);
  /// Grade-restricting assignment.
  void set_restricted(std::size_t i, const Multivector& v) { values_[i] = grade_restrict(v, grades_); }

  /// Blades in the declared grade set, in mask order.
  std::vector<unsigned> blades() const;

  /// Max over free sites of the largest component.
  double max_abs_free() const;

 private:
  Lattice lat_;
  GradeSet grades_;
  std::vector<Multivector> values_;
};

LatticeField operator-(const LatticeField& a, const LatticeField& b);

/// Samples X at every site centre. Throws GradeError unless grades(X) within G.
LatticeField discretize(const FieldExpr& x, const Lattice& lat, GradeSet g);

/// sum over domain sites of l(F, del*F, J, A_ext) cellvol. Throws ModeMismatchError unless L is flat.
double discrete_action(const LagrangianSpec& L, const LatticeField& f);

/// Multivector gradient sum_J e^J dS/dF_J(s) by stencil transposition (scatter). Zero at fixed sites.
LatticeField action_gradient(const LagrangianSpec& L, const LatticeField& f);

/// d_X l - del*' P at free sites (gather with transposed stencils); zero at fixed sites.
LatticeField discrete_ele_residual(const LagrangianSpec& L, const LatticeField& f);

/// Max over free sites of |gradient - cellvol residual|.
double gradient_residual_duality(const LagrangianSpec& L, const LatticeField& f);

struct DiscreteGauss {
  double volume = 0.0;
  double flux = 0.0;
};

/// Sum over domain sites of (del.v) cellvol against the boundary flux of the same stencil.
DiscreteGauss discrete_gauss(const LatticeField& v);

/// Discrete del_|(del ^ A) on a vector field (fast path; zero at fixed sites).
LatticeField maxwell_operator(const LatticeField& a);

struct SolveOptions {
  double rel_tol = 1e-10;
  int max_iterations = 5000;
};

struct SolveResult {
  LatticeField a;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Solves del_|(del ^ A) = mu0 J on the free sites, with the boundary layer taken from
/// `boundary` (zero if absent). Null-space components (gauge directions and, for periodic
/// lattices, constants) are left at minimum norm.
/// Throws SolverError for a periodic J with nonzero site sum, for a J with a component outside
/// range(K) (detected as a least-squares stop), or on non-convergence.
SolveResult solve_maxwell(const Lattice& lat, const LatticeField& j, double mu0 = 1.0, const SolveOptions& opt = {},
                          const LatticeField* boundary = nullptr);

/// Writes `path` (little-endian float64, site-major, component-minor over the declared blades)
/// and `path`.hdr (dimensions, grades, blades, spacing, origin, boundary). Throws std::runtime_error on I/O failure.
void export_field(const LatticeField& f, const std::filesystem::path& path);

}  // namespace mfl
