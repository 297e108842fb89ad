#include "heraldsim/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>
#include <stdexcept>
#include <utility>

namespace heraldsim {
namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

FftBuffer::FftBuffer(std::size_t n) : FftBuffer(1, n) {}

FftBuffer::FftBuffer(std::size_t rows, std::size_t cols) : size_(rows * cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("FftBuffer: empty shape");
    std::lock_guard lock(planner_mutex());
    data_ = reinterpret_cast<Complex*>(fftw_alloc_complex(size_));
    if (data_ == nullptr) throw std::bad_alloc();
    const auto r = static_cast<int>(rows);
    const auto c = static_cast<int>(cols);
    if (rows == 1) {
        forward_plan_ = fftw_plan_dft_1d(c, as_fftw(data_), as_fftw(data_), FFTW_FORWARD, FFTW_ESTIMATE);
        backward_plan_ = fftw_plan_dft_1d(c, as_fftw(data_), as_fftw(data_), FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
        forward_plan_ = fftw_plan_dft_2d(r, c, as_fftw(data_), as_fftw(data_), FFTW_FORWARD, FFTW_ESTIMATE);
        backward_plan_ = fftw_plan_dft_2d(r, c, as_fftw(data_), as_fftw(data_), FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (forward_plan_ == nullptr || backward_plan_ == nullptr) {
        release();
        throw std::runtime_error("FftBuffer: FFTW planning failed");
    }
}

FftBuffer::~FftBuffer() {
    std::lock_guard lock(planner_mutex());
    release();
}

void FftBuffer::release() noexcept {
    if (forward_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    if (backward_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
    if (data_ != nullptr) fftw_free(data_);
    forward_plan_ = backward_plan_ = nullptr;
    data_ = nullptr;
    size_ = 0;
}

FftBuffer::FftBuffer(FftBuffer&& other) noexcept
    : data_(std::exchange(other.data_, nullptr)),
      size_(std::exchange(other.size_, 0)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      backward_plan_(std::exchange(other.backward_plan_, nullptr)) {}

FftBuffer& FftBuffer::operator=(FftBuffer&& other) noexcept {
    if (this != &other) {
        {
            std::lock_guard lock(planner_mutex());
            release();
        }
        data_ = std::exchange(other.data_, nullptr);
        size_ = std::exchange(other.size_, 0);
        forward_plan_ = std::exchange(other.forward_plan_, nullptr);
        backward_plan_ = std::exchange(other.backward_plan_, nullptr);
    }
    return *this;
}

void FftBuffer::forward() { fftw_execute(static_cast<fftw_plan>(forward_plan_)); }
void FftBuffer::backward() { fftw_execute(static_cast<fftw_plan>(backward_plan_)); }

}  // namespace heraldsim
