#include "fft.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace charsum::detail {

namespace {

// The FFTW planner is not reentrant; execution with new-array is.
std::mutex& planner_mutex() {
    static std::mutex mu;
    return mu;
}

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer make_buffer(std::size_t n) {
    auto* p = fftw_alloc_complex(n);
    if (p == nullptr) throw std::bad_alloc();
    return Buffer(p);
}

class Plan {
public:
    Plan(std::size_t n, int sign, fftw_complex* in, fftw_complex* out) {
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign, FFTW_ESTIMATE);
        if (plan_ == nullptr) throw std::runtime_error("fftw planning failed");
    }
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    void run(fftw_complex* in, fftw_complex* out) const { fftw_execute_dft(plan_, in, out); }

private:
    fftw_plan plan_ = nullptr;
};

void load(fftw_complex* dst, std::span<const std::complex<double>> src) {
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i][0] = src[i].real();
        dst[i][1] = src[i].imag();
    }
}

}  // namespace

std::vector<std::complex<double>> cyclic_convolve(std::span<const std::complex<double>> a,
                                                  std::span<const std::complex<double>> b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("cyclic_convolve: length mismatch");
    if (n == 0) return {};

    Buffer fa = make_buffer(n), fb = make_buffer(n), tmp = make_buffer(n);
    Plan forward(n, FFTW_FORWARD, tmp.get(), fa.get());
    Plan backward(n, FFTW_BACKWARD, tmp.get(), fa.get());

    load(tmp.get(), a);
    forward.run(tmp.get(), fa.get());
    load(tmp.get(), b);
    forward.run(tmp.get(), fb.get());
    for (std::size_t i = 0; i < n; ++i) {
        const double re = fa[i][0] * fb[i][0] - fa[i][1] * fb[i][1];
        const double im = fa[i][0] * fb[i][1] + fa[i][1] * fb[i][0];
        tmp[i][0] = re;
        tmp[i][1] = im;
    }
    backward.run(tmp.get(), fa.get());

    std::vector<std::complex<double>> out(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = {fa[i][0] * scale, fa[i][1] * scale};
    return out;
}

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> a, int sign) {
    const std::size_t n = a.size();
    if (n == 0) return {};
    Buffer in = make_buffer(n), out = make_buffer(n);
    Plan plan(n, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD, in.get(), out.get());
    load(in.get(), a);
    plan.run(in.get(), out.get());
    std::vector<std::complex<double>> result(n);
    for (std::size_t i = 0; i < n; ++i) result[i] = {out[i][0], out[i][1]};
    return result;
}

std::vector<std::complex<double>> cyclic_correlate(std::span<const std::complex<double>> a,
                                                   std::span<const std::complex<double>> b) {
    // sum_x a[x] b[x+s] = sum_y a[-y] b[s-y]
    const std::size_t n = a.size();
    std::vector<std::complex<double>> reflected(n);
    for (std::size_t y = 0; y < n; ++y) reflected[y] = a[(n - y) % n];
    return cyclic_convolve(reflected, b);
}

}  // namespace charsum::detail
