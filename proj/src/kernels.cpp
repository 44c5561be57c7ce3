#include "mgt/kernels.hpp"

#include <vector>

namespace mgt::kernels {

template <class Real>
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body, Execution exec) {
    if constexpr (parallel_capable<Real>()) {
        if (exec == Execution::parallel) {
            std::vector<std::exception_ptr> errors(count);
            const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
            for (long i = 0; i < n; ++i) {
                try {
                    body(static_cast<std::size_t>(i));
                } catch (...) {
                    errors[static_cast<std::size_t>(i)] = std::current_exception();
                }
            }
            for (auto& e : errors)
                if (e) std::rethrow_exception(e);
            return;
        }
    }
    for (std::size_t i = 0; i < count; ++i) body(i);
}

template <class Real>
Matrix<Real> gram(const BilinearForm<Real>& form, std::size_t n, Execution exec) {
    Matrix<Real> g(n + 1, n + 1);
    std::vector<Polynomial<Real>> mono;
    mono.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) mono.push_back(Polynomial<Real>::monomial(k));
    for_each_index<Real>(
        n + 1,
        [&](std::size_t i) {
            for (std::size_t j = i; j <= n; ++j) {
                const Real v = form.inner(mono[i], mono[j]);
                g(i, j) = v;
                g(j, i) = v;
            }
        },
        exec);
    return g;
}

template <class Real>
Matrix<Real> inner_table(const BilinearForm<Real>& form, const std::vector<Polynomial<Real>>& lhs,
                         const std::vector<Polynomial<Real>>& rhs, Execution exec) {
    Matrix<Real> t(lhs.size(), rhs.size());
    for_each_index<Real>(
        lhs.size(),
        [&](std::size_t i) {
            for (std::size_t j = 0; j < rhs.size(); ++j) t(i, j) = form.inner(lhs[i], rhs[j]);
        },
        exec);
    return t;
}

template <class Real>
BandMatrix<Real> inner_band(const BilinearForm<Real>& form, const std::vector<Polynomial<Real>>& lhs,
                            const std::vector<Polynomial<Real>>& rhs, std::size_t lower, std::size_t upper,
                            Execution exec) {
    const std::size_t m = std::min(lhs.size(), rhs.size());
    BandMatrix<Real> b(m, lower, upper);
    for_each_index<Real>(
        m,
        [&](std::size_t i) {
            for (std::size_t j = b.row_begin(i); j < b.row_end(i); ++j) b.at(i, j) = form.inner(lhs[i], rhs[j]);
        },
        exec);
    return b;
}

template <class Real>
BandMatrix<Real> multiply(const BandMatrix<Real>& a, const BandMatrix<Real>& b, Execution exec) {
    if (a.size() != b.size()) throw std::invalid_argument("band sizes differ");
    const std::size_t m = a.size();
    const std::size_t cap = m == 0 ? 0 : m - 1;
    BandMatrix<Real> c(m, std::min(cap, a.lower() + b.lower()), std::min(cap, a.upper() + b.upper()));
    for_each_index<Real>(
        m,
        [&](std::size_t i) {
            for (std::size_t j = c.row_begin(i); j < c.row_end(i); ++j) {
                Real s(0);
                for (std::size_t k = a.row_begin(i); k < a.row_end(i); ++k)
                    if (b.in_band(k, j)) s += a(i, k) * b(k, j);
                c.at(i, j) = s;
            }
        },
        exec);
    return c;
}

#define MGT_INSTANTIATE(R)                                                                                      \
    template void for_each_index<R>(std::size_t, const std::function<void(std::size_t)>&, Execution);         \
    template Matrix<R> gram(const BilinearForm<R>&, std::size_t, Execution);                                    \
    template Matrix<R> inner_table(const BilinearForm<R>&, const std::vector<Polynomial<R>>&,                   \
                                   const std::vector<Polynomial<R>>&, Execution);                               \
    template BandMatrix<R> inner_band(const BilinearForm<R>&, const std::vector<Polynomial<R>>&,                \
                                      const std::vector<Polynomial<R>>&, std::size_t, std::size_t, Execution);  \
    template BandMatrix<R> multiply(const BandMatrix<R>&, const BandMatrix<R>&, Execution);

MGT_INSTANTIATE(double)
MGT_INSTANTIATE(HpReal)

}  // namespace mgt::kernels
