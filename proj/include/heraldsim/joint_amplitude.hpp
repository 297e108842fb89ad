#pragma once

#include "heraldsim/numerics.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace heraldsim {

/// Two-photon amplitude Ψ(t, t') sampled on signal × idler time grids.
///
/// Storage is row-major with one row per signal sample, so that filtering
/// the idler acts on contiguous rows. Values are immutable once built;
/// filtering produces a new JointAmplitude.
class JointAmplitude {
public:
    JointAmplitude(Grid signal, Grid idler, std::vector<Complex> samples, bool filtered = false);

    [[nodiscard]] const Grid& signal_grid() const { return signal_; }
    [[nodiscard]] const Grid& idler_grid() const { return idler_; }
    [[nodiscard]] bool filtered() const { return filtered_; }

    [[nodiscard]] Complex at(std::size_t i_signal, std::size_t i_idler) const {
        return samples_[i_signal * idler_.count + i_idler];
    }
    [[nodiscard]] std::span<const Complex> row(std::size_t i_signal) const {
        return {samples_.data() + i_signal * idler_.count, idler_.count};
    }
    [[nodiscard]] std::span<const Complex> samples() const { return samples_; }

    /// ∬|Ψ|² dt dt' as a discrete sum.
    [[nodiscard]] double norm_squared() const;

private:
    Grid signal_;
    Grid idler_;
    std::vector<Complex> samples_;
    bool filtered_ = false;
};

}  // namespace heraldsim
