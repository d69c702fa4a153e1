#include "qmoire/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "qmoire/errors.hpp"
#include "qmoire/grid.hpp"

namespace qmoire {

struct Fft::Plans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    ~Plans() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
};

namespace {

std::mutex plan_mutex;


}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
    if (n == 0) throw InvalidArgument("FFT length must be positive");
    static std::map<std::size_t, std::shared_ptr<const Plans>> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) {
        plans_ = it->second;
        return;
    }
    auto p = std::make_shared<Plans>();
    std::vector<std::complex<double>> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    int len = static_cast<int>(n);
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p->fwd = fftw_plan_dft_1d(len, buf, buf, FFTW_FORWARD, flags);
    p->bwd = fftw_plan_dft_1d(len, buf, buf, FFTW_BACKWARD, flags);
    if (!p->fwd || !p->bwd) throw Error("FFTW plan creation failed");
    cache.emplace(n, p);
    plans_ = std::move(p);
}

void Fft::forward(std::vector<std::complex<double>>& data) const {
    if (data.size() != n_) throw GridMismatch("FFT length mismatch");
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plans_->fwd, buf, buf);
}

void Fft::backward(std::vector<std::complex<double>>& data) const {
    if (data.size() != n_) throw GridMismatch("FFT length mismatch");
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plans_->bwd, buf, buf);
}

double fft_angular_frequency(std::size_t p, std::size_t n, double dx) {
    auto sp = static_cast<long long>(p);
    auto sn = static_cast<long long>(n);
    if (2 * sp > sn) sp -= sn;
    return two_pi * static_cast<double>(sp) / (static_cast<double>(n) * dx);
}

}  // namespace qmoire
