#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <cblas.h>
#include <lapacke.h>

namespace sffdl {

// Dense Hermitian eigensolves via the MRRR driver (?heevr / ?syevr), the
// fastest LAPACK path when eigenvectors are needed. Column-major throughout.
// The input matrix is destroyed.

inline void heevr(int n, std::complex<float>* a, float* w, std::complex<float>* z) {
    int m = 0;
    std::vector<int> isuppz(2 * static_cast<std::size_t>(n > 0 ? n : 1));
    const int info = LAPACKE_cheevr(LAPACK_COL_MAJOR, z ? 'V' : 'N', 'A', 'U', n, a, n,
                                    0.f, 0.f, 0, 0, 0.f, &m, w, z, n, isuppz.data());
    if (info != 0) throw std::runtime_error("cheevr failed, info=" + std::to_string(info));
}

inline void heevr(int n, std::complex<double>* a, double* w, std::complex<double>* z) {
    int m = 0;
    std::vector<int> isuppz(2 * static_cast<std::size_t>(n > 0 ? n : 1));
    const int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, z ? 'V' : 'N', 'A', 'U', n, a, n,
                                    0.0, 0.0, 0, 0, 0.0, &m, w, z, n, isuppz.data());
    if (info != 0) throw std::runtime_error("zheevr failed, info=" + std::to_string(info));
}

inline void syevr(int n, float* a, float* w, float* z) {
    int m = 0;
    std::vector<int> isuppz(2 * static_cast<std::size_t>(n > 0 ? n : 1));
    const int info = LAPACKE_ssyevr(LAPACK_COL_MAJOR, z ? 'V' : 'N', 'A', 'U', n, a, n,
                                    0.f, 0.f, 0, 0, 0.f, &m, w, z, n, isuppz.data());
    if (info != 0) throw std::runtime_error("ssyevr failed, info=" + std::to_string(info));
}

inline void syevr(int n, double* a, double* w, double* z) {
    int m = 0;
    std::vector<int> isuppz(2 * static_cast<std::size_t>(n > 0 ? n : 1));
    const int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, z ? 'V' : 'N', 'A', 'U', n, a, n,
                                    0.0, 0.0, 0, 0, 0.0, &m, w, z, n, isuppz.data());
    if (info != 0) throw std::runtime_error("dsyevr failed, info=" + std::to_string(info));
}

// C = op(A) * op(B), column-major, square n x n.
inline void gemm(char opa, char opb, int n, const std::complex<float>* a,
                 const std::complex<float>* b, std::complex<float>* c) {
    const std::complex<float> one(1.f, 0.f), zero(0.f, 0.f);
    cblas_cgemm(CblasColMajor, opa == 'C' ? CblasConjTrans : CblasNoTrans,
                opb == 'C' ? CblasConjTrans : CblasNoTrans, n, n, n, &one, a, n, b, n,
                &zero, c, n);
}

inline void gemm(char opa, char opb, int n, const std::complex<double>* a,
                 const std::complex<double>* b, std::complex<double>* c) {
    const std::complex<double> one(1.0, 0.0), zero(0.0, 0.0);
    cblas_zgemm(CblasColMajor, opa == 'C' ? CblasConjTrans : CblasNoTrans,
                opb == 'C' ? CblasConjTrans : CblasNoTrans, n, n, n, &one, a, n, b, n,
                &zero, c, n);
}

}  // namespace sffdl
