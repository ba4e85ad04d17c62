#include "blowuplab/transform.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

namespace blowuplab {

namespace {

// sin(k pi i / n) table, k,i = 1..n-1, row-major in k. Cached per n and
// shared read-only across worker threads (map nodes are never invalidated).
const std::vector<double>& sine_matrix(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<double>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::vector<double> s(static_cast<size_t>(n - 1) * (n - 1));
        const double pi = std::acos(-1.0);
        for (int k = 1; k < n; ++k)
            for (int i = 1; i < n; ++i)
                s[static_cast<size_t>(k - 1) * (n - 1) + (i - 1)] =
                    std::sin(pi * k * i / n);
        return cache.emplace(n, std::move(s)).first->second;
    }
    return it->second;
}

// Both passes contract one x-direction against the sine matrix with the
// z-line (contiguous) as the innermost loop, so the kernel streams.
//   out[r][c][j] = scale * sum_q S[r][q] * in[q][c][j]
// in rows q = 0..m-1 with strides (in_s1, in_s2), out rows r = 0..m-1.
void contract(const double* S, int m, int ncols, int nline, const double* in,
              long in_s1, long in_s2, double* out, long out_s1, long out_s2,
              double scale, Exec exec, int threads) {
    // Register-blocked contraction: RBLK output rows and W-wide j-chunks keep
    // the accumulators in registers across the whole q sweep, so each input
    // load feeds RBLK fused multiply-adds.
    constexpr int RBLK = 4, W = 4;
    auto col = [&](int c) {
        const double* pin = in + c * in_s2;
        for (int r0 = 0; r0 < m; r0 += RBLK) {
            const int rb = (m - r0 < RBLK) ? m - r0 : RBLK;
            for (int j0 = 0; j0 < nline; j0 += W) {
                const int wb = (nline - j0 < W) ? nline - j0 : W;
                double acc[RBLK][W] = {};
                if (rb == RBLK && wb == W) {
                    for (int q = 0; q < m; ++q) {
                        const double* p = pin + q * in_s1 + j0;
                        const double c0 = S[static_cast<size_t>(r0) * m + q];
                        const double c1 = S[static_cast<size_t>(r0 + 1) * m + q];
                        const double c2 = S[static_cast<size_t>(r0 + 2) * m + q];
                        const double c3 = S[static_cast<size_t>(r0 + 3) * m + q];
                        for (int w = 0; w < W; ++w) {
                            const double pv = p[w];
                            acc[0][w] += c0 * pv;
                            acc[1][w] += c1 * pv;
                            acc[2][w] += c2 * pv;
                            acc[3][w] += c3 * pv;
                        }
                    }
                } else {
                    for (int q = 0; q < m; ++q) {
                        const double* p = pin + q * in_s1 + j0;
                        for (int r = 0; r < rb; ++r) {
                            const double coef = S[static_cast<size_t>(r0 + r) * m + q];
                            for (int w = 0; w < wb; ++w) acc[r][w] += coef * p[w];
                        }
                    }
                }
                for (int r = 0; r < rb; ++r) {
                    double* o = out + (r0 + r) * out_s1 + c * out_s2 + j0;
                    for (int w = 0; w < wb; ++w) o[w] = scale * acc[r][w];
                }
            }
        }
    };
    if (exec == Exec::OpenMP && ncols > 1) {
#pragma omp parallel for schedule(static) num_threads(threads)
        for (int c = 0; c < ncols; ++c) col(c);
    } else {
        for (int c = 0; c < ncols; ++c) col(c);
    }
}

}  // namespace

SpectralField dst_forward(const ScalarField& f, Exec exec) {
    const Grid& g = f.grid();
    const int n = g.nx, m = n - 1, npz = g.npz();
    const std::vector<double>& S = sine_matrix(n);
    const int threads = thread_cap();

    // pass 1: contract x1 (interior nodes 1..m) -> tmp[k1][i2=1..m][j]
    std::vector<double> tmp(static_cast<size_t>(m) * m * npz);
    const long fs1 = static_cast<long>(g.npx()) * npz, fs2 = npz;
    contract(S.data(), m, m, npz, f.data() + fs1 + fs2, fs1, fs2, tmp.data(),
             static_cast<long>(m) * npz, npz, 1.0, exec, threads);

    // pass 2: contract x2 -> vhat[k1][k2][j], with the DST-I normalization
    SpectralField out(g);
    const double scale = 4.0 / (static_cast<double>(n) * n);
    // rows of the second contraction are k2; iterate per k1 block
    auto block = [&](int k1) {
        const double* in = tmp.data() + static_cast<size_t>(k1) * m * npz;
        double* o = out.data() + static_cast<size_t>(k1) * m * npz;
        contract(S.data(), m, 1, npz, in, npz, 0, o, npz, 0, scale, Exec::Serial, 1);
    };
    if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(static) num_threads(threads)
        for (int k1 = 0; k1 < m; ++k1) block(k1);
    } else {
        for (int k1 = 0; k1 < m; ++k1) block(k1);
    }
    return out;
}

ScalarField dst_inverse(const SpectralField& F, Exec exec) {
    const Grid& g = F.grid();
    const int n = g.nx, m = n - 1, npz = g.npz();
    const std::vector<double>& S = sine_matrix(n);
    const int threads = thread_cap();

    // pass 1: contract k1 -> tmp[i1][k2][j]
    std::vector<double> tmp(static_cast<size_t>(m) * m * npz);
    contract(S.data(), m, m, npz, F.data(), static_cast<long>(m) * npz, npz,
             tmp.data(), static_cast<long>(m) * npz, npz, 1.0, exec, threads);

    // pass 2: contract k2 -> out interior nodes
    ScalarField out(g);
    const long os1 = static_cast<long>(g.npx()) * npz, os2 = npz;
    auto block = [&](int i1) {
        const double* in = tmp.data() + static_cast<size_t>(i1) * m * npz;
        double* o = out.data() + (i1 + 1) * os1 + os2;
        contract(S.data(), m, 1, npz, in, npz, 0, o, os2, 0, 1.0, Exec::Serial, 1);
    };
    if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(static) num_threads(threads)
        for (int i1 = 0; i1 < m; ++i1) block(i1);
    } else {
        for (int i1 = 0; i1 < m; ++i1) block(i1);
    }
    return out;
}

double mode_symbol(const Grid& g, int k1, int k2) {
    const double pa = std::acos(-1.0) / g.domain.a;
    return pa * pa * (static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
}

}  // namespace blowuplab
