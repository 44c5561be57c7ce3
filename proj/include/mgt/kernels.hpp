#pragma once

// Data-parallel kernels. Every kernel has a serial reference; the OpenMP version
// computes each output entry with exactly the same operations, so the two agree bit
// for bit. HpReal always runs serially: MPFR default precision is per-thread state.

#include "mgt/band.hpp"
#include "mgt/forms.hpp"

#include <exception>
#include <functional>

namespace mgt::kernels {

enum class Execution { serial, parallel };

template <class Real>
constexpr bool parallel_capable() {
    return is_native_v<Real>;
}

/// Runs body(i) for i in [0, count). Exceptions are captured per index and the one with
/// the smallest index is rethrown after the loop.
template <class Real>
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body, Execution exec);

template <class Real>
Matrix<Real> gram(const BilinearForm<Real>& form, std::size_t n, Execution exec);

/// (form.inner(lhs[i], rhs[j]))_{i,j}
template <class Real>
Matrix<Real> inner_table(const BilinearForm<Real>& form, const std::vector<Polynomial<Real>>& lhs,
                         const std::vector<Polynomial<Real>>& rhs, Execution exec);

/// Banded version of inner_table: only -lower <= j - i <= upper is evaluated.
template <class Real>
BandMatrix<Real> inner_band(const BilinearForm<Real>& form, const std::vector<Polynomial<Real>>& lhs,
                            const std::vector<Polynomial<Real>>& rhs, std::size_t lower, std::size_t upper,
                            Execution exec);

/// Band product with bandwidths added; the inner index is limited to the section.
template <class Real>
BandMatrix<Real> multiply(const BandMatrix<Real>& a, const BandMatrix<Real>& b, Execution exec);

}  // namespace mgt::kernels
