#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "accum.hpp"
#include "chain.hpp"
#include "curve.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace sffdl {

template <class Real>
struct EigData {
    std::vector<Real> eigenvalues;                 // ascending
    std::vector<std::complex<Real>> eigenvectors;  // column-major, empty if not requested
    long realization_id = 0;
};

// Destroys the input matrix.
template <class Real>
EigData<Real> diagonalize(std::vector<std::complex<Real>>& H, int n, bool want_vectors,
                          long realization_id = 0) {
    EigData<Real> eig;
    eig.realization_id = realization_id;
    eig.eigenvalues.resize(n);
    if (want_vectors) eig.eigenvectors.resize(static_cast<std::size_t>(n) * n);
    heevr(n, H.data(), eig.eigenvalues.data(),
          want_vectors ? eig.eigenvectors.data() : nullptr);
    return eig;
}

template <class Real>
std::vector<Real> eigenvalues_sym(std::vector<Real>& H, int n) {
    std::vector<Real> w(n);
    syevr(n, H.data(), w.data(), static_cast<Real*>(nullptr));
    return w;
}

// max |H V - V diag(E)| over all entries; test-side residual check.
template <class Real>
double reconstruction_residual(const std::vector<std::complex<Real>>& H,
                               const EigData<Real>& eig, int n) {
    const auto N = static_cast<std::size_t>(n);
    std::vector<std::complex<Real>> hv(N * N);
    gemm('N', 'N', n, H.data(), eig.eigenvectors.data(), hv.data());
    double worst = 0.0;
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t i = 0; i < N; ++i) {
            const auto d = hv[j * N + i] -
                           eig.eigenvectors[j * N + i] * eig.eigenvalues[j];
            worst = std::max(worst, static_cast<double>(std::abs(d)));
        }
    return worst;
}

// |Tr exp(-iHt)|^2 for one spectrum at each time.
template <class Real>
std::vector<double> sff_one(const std::vector<Real>& eigenvalues,
                            const std::vector<double>& times) {
    std::vector<double> out(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        double re = 0.0, im = 0.0;
        for (const Real e : eigenvalues) {
            re += std::cos(e * t);
            im += std::sin(e * t);
        }
        out[k] = re * re + im * im;
    }
    return out;
}

// Ensemble-averaged SFF with standard errors.
template <class Real>
Curve sff(const std::vector<std::vector<Real>>& eig_sets, const std::vector<double>& times) {
    if (eig_sets.empty()) throw std::invalid_argument("sff: no realizations");
    Accum acc;
    for (const auto& evs : eig_sets) acc.add(sff_one(evs, times));
    Curve c;
    c.times = times;
    c.n_realizations = static_cast<long>(eig_sets.size());
    c.values.resize(times.size());
    c.stderrs.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        c.values[i] = acc.mean(i, c.n_realizations);
        c.stderrs[i] = acc.stderr_of_mean(i, c.n_realizations);
    }
    return c;
}

// Eigenbasis matrix elements of the per-site energy operators, reduced to the
// data needed to evaluate C_mn(t) cheaply at many times. Site pair (1,2).
struct PairCorrelatorData {
    int n = 0;
    std::vector<float> E;
    std::vector<float> Q11;            // |W1_ab|^2
    std::vector<float> Q12re, Q12im;   // W1_ab * conj(W2_ab)
};

// C_mn(t) = N^-L sum_ab e^{i(E_a-E_b)t} <a|H_m|b><b|H_n|a>, evaluated with
// cos/sin vectors against the precomputed real matrices.
inline void pair_correlators_at(const PairCorrelatorData& d, double t, double& c11,
                                double& c12) {
    const int n = d.n;
    std::vector<float> cv(n), sv(n), y(n);
    for (int a = 0; a < n; ++a) {
        cv[a] = static_cast<float>(std::cos(d.E[a] * t));
        sv[a] = static_cast<float>(std::sin(d.E[a] * t));
    }
    // quad(M, x, z) = x^T M z
    const auto quad = [&](const std::vector<float>& M, const float* x, const float* z) {
        cblas_sgemv(CblasColMajor, CblasNoTrans, n, n, 1.f, M.data(), n, z, 1, 0.f,
                    y.data(), 1);
        return static_cast<double>(cblas_sdot(n, x, 1, y.data(), 1));
    };
    const double inv_m = 1.0 / n;
    c11 = inv_m * (quad(d.Q11, cv.data(), cv.data()) + quad(d.Q11, sv.data(), sv.data()));
    // Re sum_ab (A + iB)_ab e^{i(th_a - th_b)} = cAc + sAs + cBs - sBc
    c12 = inv_m * (quad(d.Q12re, cv.data(), cv.data()) + quad(d.Q12re, sv.data(), sv.data()) +
                   quad(d.Q12im, cv.data(), sv.data()) - quad(d.Q12im, sv.data(), cv.data()));
}

// T = X_site V without forming the embedded operator: site 0 acts on the fast
// tensor index (T = h * V with V read as N x (N n) blocks), site 1 on the slow
// one (per column, T_j = M_j h^T with M_j the N x N reshape of the column).
inline void site_op_times_matrix(int site, int N, const std::vector<std::complex<float>>& h,
                                 const std::vector<std::complex<float>>& V, int n,
                                 std::vector<std::complex<float>>& T) {
    T.resize(static_cast<std::size_t>(n) * n);
    const std::complex<float> one(1.f, 0.f), zero(0.f, 0.f);
    if (site == 0) {
        cblas_cgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, N, N * n, N, &one, h.data(),
                    N, V.data(), N, &zero, T.data(), N);
    } else {
        for (int j = 0; j < n; ++j)
            cblas_cgemm(CblasColMajor, CblasNoTrans, CblasTrans, N, N, N, &one,
                        V.data() + static_cast<std::size_t>(j) * n, N, h.data(), N, &zero,
                        T.data() + static_cast<std::size_t>(j) * n, N);
    }
}

// W_m = V^dag X_m V for the two site operators of an L=2 chain, reduced to
// the real matrices used by pair_correlators_at.
inline PairCorrelatorData build_pair_correlator_data(const ChainSpec& spec,
                                                     const ChainRealization<float>& real,
                                                     const EigData<float>& eig) {
    if (spec.L != 2) throw std::invalid_argument("build_pair_correlator_data: L = 2 only");
    const int n = static_cast<int>(spec.dim());
    const auto nn = static_cast<std::size_t>(n) * n;
    PairCorrelatorData d;
    d.n = n;
    d.E = eig.eigenvalues;
    std::vector<std::complex<float>> T, W1(nn), W2(nn);
    for (int site = 0; site < 2; ++site) {
        site_op_times_matrix(site, spec.N, real.site_blocks[site], eig.eigenvectors, n, T);
        gemm('C', 'N', n, eig.eigenvectors.data(), T.data(),
             (site == 0 ? W1 : W2).data());
    }
    d.Q11.resize(nn);
    d.Q12re.resize(nn);
    d.Q12im.resize(nn);
    for (std::size_t i = 0; i < nn; ++i) {
        d.Q11[i] = std::norm(W1[i]);
        const std::complex<float> p = W1[i] * std::conj(W2[i]);
        d.Q12re[i] = p.real();
        d.Q12im[i] = p.imag();
    }
    return d;
}

// Reference double-precision correlator for arbitrary site operators; used at
// small N where the O(n^3) cost per operator is irrelevant.
inline std::vector<std::vector<Curve>> energy_correlator(
    const EigData<double>& eig, const std::vector<std::vector<std::complex<double>>>& site_ops,
    int n, const std::vector<double>& times) {
    if (eig.eigenvectors.empty())
        throw std::invalid_argument("energy_correlator: eigenvectors required");
    const auto nn = static_cast<std::size_t>(n) * n;
    const std::size_t m = site_ops.size();
    std::vector<std::vector<std::complex<double>>> W(m);
    std::vector<std::complex<double>> T(nn);
    for (std::size_t s = 0; s < m; ++s) {
        W[s].resize(nn);
        gemm('N', 'N', n, site_ops[s].data(), eig.eigenvectors.data(), T.data());
        gemm('C', 'N', n, eig.eigenvectors.data(), T.data(), W[s].data());
    }
    std::vector<std::vector<Curve>> out(m, std::vector<Curve>(m));
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) {
            Curve c;
            c.times = times;
            c.values.resize(times.size());
            for (std::size_t k = 0; k < times.size(); ++k) {
                const double t = times[k];
                std::complex<double> sum = 0.0;
                for (int b = 0; b < n; ++b)
                    for (int a = 0; a < n; ++a) {
                        const double phase = (eig.eigenvalues[a] - eig.eigenvalues[b]) * t;
                        sum += std::polar(1.0, phase) * W[p][static_cast<std::size_t>(b) * n + a] *
                               W[q][static_cast<std::size_t>(a) * n + b];
                    }
                c.values[k] = sum.real() / n;
            }
            out[p][q] = std::move(c);
        }
    return out;
}

// Resumable two-site ensemble: accumulates K(t) on sff_times and C11/C12 on
// corr_times over independent realizations, checkpointing to cache_path.
struct TwoSiteEnsembleSpec {
    int N = 64;
    double lambda = 0.1;
    std::vector<double> sff_times;
    std::vector<double> corr_times;
    uint64_t master_seed = 1;

    uint64_t hash() const {
        KeyHasher h;
        h << std::string("twosite_ed") << static_cast<int64_t>(N) << lambda << sff_times
          << corr_times << master_seed;
        return h.h;
    }
};

inline AccumSet run_twosite_ensemble(const TwoSiteEnsembleSpec& spec, long n_target,
                                     const std::filesystem::path& cache_path,
                                     int n_workers = 1, int checkpoint_every = 5,
                                     const std::function<void(long)>& progress = {}) {
    AccumSet set;
    set.key_hash = spec.hash();
    if (!cache_path.empty()) {
        if (auto loaded = AccumSet::load(cache_path, set.key_hash)) set = *loaded;
    }
    ChainSpec chain;
    chain.L = 2;
    chain.N = spec.N;
    chain.lambda = spec.lambda;
    chain.dim_guard = 1u << 24;
    const JobFn job = [&](long id) {
        Rng rng(spec.master_seed, "twosite_ed", static_cast<uint64_t>(id));
        auto real = build_chain_realization<float>(chain, rng);
        const int n = static_cast<int>(chain.dim());
        auto eig = diagonalize(real.H, n, true, id);
        real.H.clear();
        real.H.shrink_to_fit();
        const auto k_vals = sff_one(eig.eigenvalues, spec.sff_times);
        const auto d = build_pair_correlator_data(chain, real, eig);
        std::vector<double> c11(spec.corr_times.size()), c12(spec.corr_times.size());
        for (std::size_t i = 0; i < spec.corr_times.size(); ++i)
            pair_correlators_at(d, spec.corr_times[i], c11[i], c12[i]);
        if (progress) progress(id);
        return std::vector<std::pair<std::string, std::vector<double>>>{
            {"K", k_vals}, {"C11", c11}, {"C12", c12}};
    };
    run_ids_parallel(set, n_target, n_workers, 1, job,
                     cache_path.empty()
                         ? std::function<void(const AccumSet&)>{}
                         : [&](const AccumSet& s) { s.save(cache_path); },
                     checkpoint_every);
    return set;
}

// Resumable spin-chain SFF ensemble (eigenvalues only).
struct SpinChainEnsembleSpec {
    SpinChainSpec chain;
    std::vector<double> times;
    uint64_t master_seed = 1;

    uint64_t hash() const {
        KeyHasher h;
        h << std::string("spinchain_ed") << static_cast<int64_t>(chain.L)
          << static_cast<int64_t>(chain.periodic ? 1 : 0) << chain.h_lo << chain.h_hi
          << chain.J_lo << chain.J_hi << times << master_seed;
        return h.h;
    }
};

inline AccumSet run_spinchain_ensemble(const SpinChainEnsembleSpec& spec, long n_target,
                                       const std::filesystem::path& cache_path,
                                       int n_workers = 1, int checkpoint_every = 50) {
    AccumSet set;
    set.key_hash = spec.hash();
    if (!cache_path.empty()) {
        if (auto loaded = AccumSet::load(cache_path, set.key_hash)) set = *loaded;
    }
    const int n = static_cast<int>(spec.chain.dim());
    const JobFn job = [&](long id) {
        Rng rng(spec.master_seed, spec.chain.periodic ? "spin_pbc" : "spin_obc",
                static_cast<uint64_t>(id));
        auto H = build_spin_chain<float>(spec.chain, rng);
        const auto evs = eigenvalues_sym(H, n);
        return std::vector<std::pair<std::string, std::vector<double>>>{
            {"K", sff_one(evs, spec.times)}};
    };
    run_ids_parallel(set, n_target, n_workers, 1, job,
                     cache_path.empty()
                         ? std::function<void(const AccumSet&)>{}
                         : [&](const AccumSet& s) { s.save(cache_path); },
                     checkpoint_every);
    return set;
}

inline Curve curve_from_accum(const AccumSet& set, const std::string& name,
                              const std::vector<double>& times) {
    const auto& acc = set.accums.at(name);
    Curve c;
    c.times = times;
    c.n_realizations = set.n_done;
    c.values.resize(times.size());
    c.stderrs.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        c.values[i] = acc.mean(i, set.n_done);
        c.stderrs[i] = acc.stderr_of_mean(i, set.n_done);
    }
    return c;
}

}  // namespace sffdl
