#pragma once

// Moment functionals and the three symmetric bilinear forms: the measure form
// (f,g) = \int fg dmu, the discrete Sobolev form with a jet mass matrix Lambda, and
// the multiple Geronimus form parametrized by the free block Shat = ([t^i, t^j]_h).

#include "mgt/dense.hpp"
#include "mgt/polynomial.hpp"

#include <variant>

namespace mgt {

enum class MeasureKind { laguerre, explicit_moments, quadrature };

template <class Real>
class MomentFunctional {
public:
    static constexpr std::size_t kDefaultHorizon = 160;

    /// t^alpha e^{-t} dt on (0, inf); moment(0) = Gamma(alpha + 1).
    static MomentFunctional laguerre(const Real& alpha, std::size_t horizon = kDefaultHorizon);
    static MomentFunctional from_moments(std::vector<Real> moments);
    /// sum_i w_i delta(t - x_i)
    static MomentFunctional quadrature(std::vector<Real> nodes, std::vector<Real> weights,
                                       std::size_t horizon = kDefaultHorizon);

    MeasureKind kind() const { return kind_; }
    /// Largest k for which moment(k) is available.
    std::size_t horizon() const { return moments_.size() - 1; }
    Real moment(std::size_t k) const {
        if (k >= moments_.size()) throw HorizonError(k, horizon());
        return moments_[k];
    }
    const std::vector<Real>& moments() const { return moments_; }
    const Real& laguerre_alpha() const { return alpha_; }
    const std::vector<Real>& nodes() const { return nodes_; }
    const std::vector<Real>& weights() const { return weights_; }

    /// (moment(i + j))_{i,j <= n}
    Matrix<Real> hankel(std::size_t n) const;
    /// True when every leading principal minor of hankel(n) is positive.
    bool hankel_positive(std::size_t n) const;

private:
    MomentFunctional() = default;

    MeasureKind kind_ = MeasureKind::explicit_moments;
    Real alpha_ = Real(0);
    std::vector<Real> nodes_;
    std::vector<Real> weights_;
    std::vector<Real> moments_;
};

/// Moments of mu_0 = h mu: moment(k) = sum_j b_j mu.moment(k + j), b = coefficients of h.
template <class Real>
MomentFunctional<Real> pushforward_moments(const MomentFunctional<Real>& mu, const FactoredNodes<Real>& h,
                                           std::size_t horizon);

/// Jet-ordered symmetric mass matrix: entry (jet(l,i), jet(w,j)) = lambda_{i,j,l,w}.
template <class Real>
class SobolevMass {
public:
    SobolevMass(FactoredNodes<Real> nodes, Matrix<Real> lambda);

    const FactoredNodes<Real>& nodes() const { return nodes_; }
    const Matrix<Real>& lambda() const { return lambda_; }
    /// lambda_{i,j,l,w}: derivative i at node l against derivative j at node w.
    Real value(std::size_t i, std::size_t j, std::size_t l, std::size_t w) const {
        return lambda_(nodes_.jet_index(l, static_cast<unsigned>(i)), nodes_.jet_index(w, static_cast<unsigned>(j)));
    }

private:
    FactoredNodes<Real> nodes_;
    Matrix<Real> lambda_;
};

template <class Real>
struct GeronimusParams {
    GeronimusParams(FactoredNodes<Real> h, Matrix<Real> shat);

    FactoredNodes<Real> h;
    Matrix<Real> shat;
};

template <class Real>
Real measure_inner(const MomentFunctional<Real>& mu, const Polynomial<Real>& f, const Polynomial<Real>& g);

/// \int fg dmu + jet(f)^T Lambda jet(g)
template <class Real>
Real sobolev_inner(const MomentFunctional<Real>& mu, const SobolevMass<Real>& masses, const Polynomial<Real>& f,
                   const Polynomial<Real>& g);

/// \int fg dmu + a_0(f)^T S a_0(g) where a_0 are the coefficients of the remainders
/// mod h and S = Shat - (moment(i + j)). Since jet(f) = A a_0(f) this is the jet form
/// with Lambda = A^{-T} S A^{-1}.
template <class Real>
Real geronimus_inner(const MomentFunctional<Real>& mu, const GeronimusParams<Real>& params,
                     const Polynomial<Real>& f, const Polynomial<Real>& g);

/// S = Shat - (moment(i + j))_{i,j < N}
template <class Real>
Matrix<Real> free_block_offset(const MomentFunctional<Real>& mu, const GeronimusParams<Real>& params);

/// Shat = A^T Lambda A + (moment(i + j)).
template <class Real>
GeronimusParams<Real> lambda_to_shat(const MomentFunctional<Real>& mu, const FactoredNodes<Real>& h,
                                     const Matrix<Real>& lambda);

/// Lambda = A^{-T} (Shat - moments) A^{-1}.
template <class Real>
SobolevMass<Real> shat_to_lambda(const MomentFunctional<Real>& mu, const GeronimusParams<Real>& params);

enum class FormKind { measure, sobolev, geronimus };

template <class Real>
class BilinearForm {
public:
    static BilinearForm measure(MomentFunctional<Real> mu);
    static BilinearForm sobolev(MomentFunctional<Real> mu, SobolevMass<Real> masses);
    static BilinearForm geronimus(MomentFunctional<Real> mu, GeronimusParams<Real> params);

    FormKind kind() const;
    const MomentFunctional<Real>& mu() const { return mu_; }
    /// Nodes of h (Sobolev and Geronimus variants), nullptr for the measure form.
    const FactoredNodes<Real>* nodes() const;
    const SobolevMass<Real>* masses() const { return std::get_if<SobolevMass<Real>>(&extra_); }
    const GeronimusParams<Real>* params() const { return std::get_if<GeronimusParams<Real>>(&extra_); }

    /// Symmetric in its arguments bit for bit.
    Real inner(const Polynomial<Real>& f, const Polynomial<Real>& g) const;
    /// (inner(t^i, t^j))_{i,j <= n}
    Matrix<Real> gram(std::size_t n) const;
    /// Moment order needed to evaluate gram(n).
    std::size_t required_horizon(std::size_t n) const;

private:
    BilinearForm(MomentFunctional<Real> mu, std::variant<std::monostate, SobolevMass<Real>, GeronimusParams<Real>> extra);

    MomentFunctional<Real> mu_;
    std::variant<std::monostate, SobolevMass<Real>, GeronimusParams<Real>> extra_;
    Matrix<Real> s_;  // geronimus only
};

template <class Real>
Matrix<Real> gram(const BilinearForm<Real>& form, std::size_t n) {
    return form.gram(n);
}

}  // namespace mgt
