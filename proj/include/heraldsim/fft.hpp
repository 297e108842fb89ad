#pragma once

// Thin RAII wrapper over FFTW3 in-place transforms.
//
// Plans are built with FFTW_ESTIMATE so that repeated runs pick identical
// algorithms and produce bit-identical output.

#include "heraldsim/numerics.hpp"

#include <cstddef>
#include <span>

namespace heraldsim {

/// In-place complex DFT workspace of fixed shape (1-D or row-major 2-D).
///
///   forward():  X_k = Σ_n x_n e^{-2πi kn/N}
///   backward(): x_n = Σ_k X_k e^{+2πi kn/N}   (unnormalised)
class FftBuffer {
public:
    explicit FftBuffer(std::size_t n);
    FftBuffer(std::size_t rows, std::size_t cols);
    ~FftBuffer();

    FftBuffer(const FftBuffer&) = delete;
    FftBuffer& operator=(const FftBuffer&) = delete;
    FftBuffer(FftBuffer&& other) noexcept;
    FftBuffer& operator=(FftBuffer&& other) noexcept;

    [[nodiscard]] std::span<Complex> data() { return {data_, size_}; }
    [[nodiscard]] std::span<const Complex> data() const { return {data_, size_}; }
    [[nodiscard]] std::size_t size() const { return size_; }

    void forward();
    void backward();

private:
    void release() noexcept;

    Complex* data_ = nullptr;
    std::size_t size_ = 0;
    void* forward_plan_ = nullptr;
    void* backward_plan_ = nullptr;
};

}  // namespace heraldsim
