#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace qmoire {

// Unnormalized complex DFT of fixed length backed by FFTW.
// forward: X[p] = sum x[n] e^{-2 pi i p n / N}; backward uses e^{+...}.
// Plans are cached per length; execution is thread-safe.
class Fft {
public:
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }
    void forward(std::vector<std::complex<double>>& data) const;
    void backward(std::vector<std::complex<double>>& data) const;

private:
    struct Plans;
    std::size_t n_;
    std::shared_ptr<const Plans> plans_;
};

// Angular frequency of FFT bin p for sample spacing dx, in (-pi/dx, pi/dx].
double fft_angular_frequency(std::size_t p, std::size_t n, double dx);

}  // namespace qmoire
