// Timing comparison of the serial reference kernels against the OpenMP
// variants, on the shapes the training loop actually hits. Also verifies that
// both produce bit-identical output.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

#include "qsyn/kernels.hpp"
#include "qsyn/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace qsyn;

double now_s() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::vector<double> random_vec(long n, Rng& rng) {
    std::vector<double> v(static_cast<size_t>(n));
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e30;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now_s();
        f();
        best = std::min(best, now_s() - t0);
    }
    return best;
}

struct GemmCase {
    const char* name;
    long m, n, k;
};

void bench_gemm(const GemmCase& c, Rng& rng) {
    auto A = random_vec(c.m * c.k, rng);
    auto B = random_vec(c.k * c.n, rng);
    std::vector<double> Cs(static_cast<size_t>(c.m * c.n), 0.0), Cp = Cs;

    const double flops = 2.0 * c.m * c.n * c.k;
    const int inner = std::max<int>(1, static_cast<int>(2e8 / flops));

    const double ts = time_best_of(3, [&] {
        for (int i = 0; i < inner; ++i)
            kern::serial::gemm_nn(c.m, c.n, c.k, A.data(), B.data(), Cs.data());
    });
    const double tp = time_best_of(3, [&] {
        for (int i = 0; i < inner; ++i)
            kern::par::gemm_nn(c.m, c.n, c.k, A.data(), B.data(), Cp.data());
    });
    std::printf("%-28s %8.2f %8.2f %8.2fx   %.1e\n", c.name, flops * inner / ts / 1e9,
                flops * inner / tp / 1e9, ts / tp, max_abs_diff(Cs, Cp));
}

void bench_im2col(Rng& rng) {
    const long C = 20, H = 12, W = 12, K = 5, OH = 8, OW = 8;
    auto img = random_vec(C * H * W, rng);
    std::vector<double> cs(static_cast<size_t>(C * K * K * OH * OW)), cp = cs;
    const int inner = 2000;
    const double ts = time_best_of(3, [&] {
        for (int i = 0; i < inner; ++i)
            kern::serial::im2col(img.data(), C, H, W, K, 1, 0, OH, OW, cs.data());
    });
    const double tp = time_best_of(3, [&] {
        for (int i = 0; i < inner; ++i)
            kern::par::im2col(img.data(), C, H, W, K, 1, 0, OH, OW, cp.data());
    });
    std::printf("%-28s %8.2f %8.2f %8.2fx   %.1e\n", "im2col 20x12x12 k5",
                cs.size() * inner / ts / 1e9, cs.size() * inner / tp / 1e9, ts / tp,
                max_abs_diff(cs, cp));
}

void bench_matvec(Rng& rng) {
    const long R = 256, C = 256;
    auto gp = random_vec(R * C, rng);
    auto gm = random_vec(R * C, rng);
    for (auto& g : gp) g = std::fabs(g);
    for (auto& g : gm) g = std::fabs(g);
    auto x = random_vec(R, rng);
    std::vector<double> os(static_cast<size_t>(C)), op = os;
    const int inner = 5000;
    const double flops = 2.0 * R * C;
    const double ts = time_best_of(3, [&] {
        for (int i = 0; i < inner; ++i)
            kern::serial::xbar_matvec(R, C, 0.05, gp.data(), gm.data(), x.data(), os.data());
    });
    const double tp = time_best_of(3, [&] {
        for (int i = 0; i < inner; ++i)
            kern::par::xbar_matvec(R, C, 0.05, gp.data(), gm.data(), x.data(), op.data());
    });
    std::printf("%-28s %8.2f %8.2f %8.2fx   %.1e\n", "xbar_matvec 256x256",
                flops * inner / ts / 1e9, flops * inner / tp / 1e9, ts / tp,
                max_abs_diff(os, op));
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP: %d thread(s)\n", omp_get_max_threads());
#else
    std::printf("OpenMP: disabled at build time\n");
#endif
    std::printf("%-28s %8s %8s %9s   %s\n", "kernel", "ser GF/s", "omp GF/s", "speedup",
                "max|diff|");

    Rng rng(42);
    // dense and conv shapes from the stock networks
    bench_gemm({"gemm mlp fc1 64x500x784", 64, 500, 784}, rng);
    bench_gemm({"gemm lenet conv2 50x64x500", 50, 64, 500}, rng);
    bench_gemm({"gemm lenet fc1 64x500x800", 64, 500, 800}, rng);
    bench_gemm({"gemm cifar conv2 32x256x800", 32, 256, 800}, rng);
    bench_im2col(rng);
    bench_matvec(rng);
    return 0;
}
