#pragma once

// Complex submanifolds of ℙⁿ: hypersurfaces {P = 0}, rational curves
// Γ: ℙ¹ → ℙⁿ, linear subspaces and the Segre embedding ℙ¹×ℙᵏ → ℙ²ᵏ⁺¹.
// Everything differential is computed from a local holomorphic chart through
// the point; the chart's first and second derivatives come from hyper-dual
// arithmetic (or central differences with Richardson extrapolation).

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "fstube/config.hpp"
#include "fstube/polynomial.hpp"
#include "fstube/projective.hpp"

namespace fstube {

class SubmanifoldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Hypersurface {
  HomogeneousPolynomial poly;
};

// Γ(s, t) = (Γ₀(s,t), …, Γₙ(s,t)), binary forms of common degree d.
class RationalCurve {
 public:
  RationalCurve(int n, std::vector<HomogeneousPolynomial> components);

  int ambient_dim() const { return n_; }
  int degree() const { return d_; }
  const std::vector<HomogeneousPolynomial>& components() const { return components_; }

  template <class S>
  std::vector<S> evaluate(const S& s, const S& t) const {
    const S st[2] = {s, t};
    std::vector<S> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.evaluate<S>(std::span<const S>(st, 2)));
    return out;
  }
  CVector operator()(Complex s, Complex t) const;
  // d/ds Γ(s, 1) for the affine chart t = 1 (and d/dt Γ(1, t) when `second_chart`).
  CVector chart_derivative(Complex u, bool second_chart) const;

  // Γ ∘ M for a Möbius map M ∈ GL(2, ℂ).
  RationalCurve reparametrized(const Eigen::Matrix2cd& m) const;

 private:
  int n_;
  int d_;
  std::vector<HomogeneousPolynomial> components_;
};

struct LinearSubspace {
  int n;
  int k;  // span(e₀, …, e_k)
};

struct SegreEmbedding {
  int k;  // ℙ¹ × ℙᵏ → ℙ²ᵏ⁺¹, (a, b) ↦ a ⊗ b
};

class Submanifold {
 public:
  using Kind = std::variant<Hypersurface, RationalCurve, LinearSubspace, SegreEmbedding>;

  Submanifold(Kind kind, std::string name);

  const Kind& kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int ambient_dim() const;
  int complex_dim() const;
  // Degree of the projective variety (number of intersections with a generic
  // complementary linear subspace).
  int degree() const;

 private:
  Kind kind_;
  std::string name_;
};

Submanifold make_linear(int n, int k);
Submanifold make_hypersurface(HomogeneousPolynomial poly, std::string name = "hypersurface");
Submanifold make_fermat(int n, int d);
Submanifold make_quadric(int n);  // Q^{n−1} = {Σ zᵢ² = 0}
Submanifold make_segre(int k);
Submanifold make_rational_curve(RationalCurve curve, std::string name = "rational-curve");
// (s^d, √C(d,1) s^{d−1}t, …, t^d), padded with zeros up to ℙⁿ.
RationalCurve rational_normal_curve(int d, int n);
// The line {(s, is, t, it)} ⊂ Q² ⊂ ℙ³.
RationalCurve quadric_ruling();

ProjectivePoint sample_point(const Submanifold& x, Rng& rng, const Tolerances& tol = kDefaultTolerances);

// How far p is from X in the natural residual of each representation
// (|P(p)| scaled by the coefficient norm for hypersurfaces, a Fubini–Study
// distance for the parametrized kinds).
double on_variety_residual(const Submanifold& x, const ProjectivePoint& p);

enum class DiffMethod { hyper_dual, finite_difference };

// Real 2k-jet of a holomorphic chart f with [f(0)] = p, |f(0)| = 1 and the
// phase of f(0) matching p.rep(). first[α] = ∂_α f, second[α·2k + β] = ∂_α∂_β f
// with α, β indexing the real coordinates (Re w₀, Im w₀, Re w₁, …).
struct LocalJet {
  CVector point;
  std::vector<CVector> first;
  std::vector<CVector> second;
  int real_dim = 0;
};

LocalJet local_jet(const Submanifold& x, const ProjectivePoint& p, DiffMethod method = DiffMethod::hyper_dual,
                   const Tolerances& tol = kDefaultTolerances);

// Orthonormal real bases of T_pX and ν_pX (horizontal lifts at p).
struct SubmanifoldFrame {
  ProjectivePoint point;
  std::vector<CVector> tangent;
  std::vector<CVector> normal;

  int tangent_dim() const { return static_cast<int>(tangent.size()); }
  int normal_dim() const { return static_cast<int>(normal.size()); }
};

SubmanifoldFrame tangent_normal_frame(const Submanifold& x, const ProjectivePoint& p,
                                      const Tolerances& tol = kDefaultTolerances);

// Largest violation of J T ⊂ T and of orthonormality/complementarity.
struct FrameDefects {
  double complex_invariance = 0.0;
  double orthonormality = 0.0;
  double horizontality = 0.0;
};
FrameDefects frame_defects(const SubmanifoldFrame& frame);

// New tangent basis F_β = Σ_α E_α Q_αβ for an orthogonal Q.
SubmanifoldFrame rotate_tangent_frame(const SubmanifoldFrame& frame, const Eigen::MatrixXd& q);

TangentVector random_unit_normal(const SubmanifoldFrame& frame, Rng& rng);

// Shape operator A_ξ in the frame's tangent basis: ⟨A_ξ E_α, E_β⟩ = ⟨II(E_α, E_β), ξ⟩.
Eigen::MatrixXd shape_operator(const Submanifold& x, const SubmanifoldFrame& frame, const TangentVector& xi,
                               DiffMethod method = DiffMethod::hyper_dual, const Tolerances& tol = kDefaultTolerances);

// Sorted ascending eigenvalues of a symmetric matrix.
Eigen::VectorXd sorted_spectrum(const Eigen::MatrixXd& symmetric);

// ‖[K_ξ|_{T_pX}, A_ξ]‖_F.
double curvature_adapted_defect(const SubmanifoldFrame& frame, const TangentVector& xi, const Eigen::MatrixXd& shape);

struct CurveVolume {
  double volume = 0.0;
  double ratio_to_line = 0.0;  // Vol / π
  double ratio_to_2pi = 0.0;   // Vol / 2π
  double error_estimate = 0.0;
};

// Fubini–Study area of Γ(ℙ¹) by adaptive quadrature over the two affine charts.
CurveVolume curve_volume(const RationalCurve& curve, double rel_tol = 1e-12);

}  // namespace fstube
