#ifndef RISCFO_FRAME_HPP
#define RISCFO_FRAME_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "riscfo/random.hpp"
#include "riscfo/types.hpp"

namespace riscfo {

/// Block and subsequence dimensions of the (M+1)-block pilot frame.
///
/// Invariants (checked on construction): N % L == 0, N/L >= 2,
/// 2 <= N_z <= N/L, L <= L_CP <= N, M >= 0.
class FrameGeometry {
public:
    FrameGeometry(Index subcarriers, Index channel_taps, Index cp_length, Index elements,
                  Index training_subsequences);

    Index subcarriers() const noexcept { return n_; }       ///< N
    Index channel_taps() const noexcept { return l_; }      ///< L
    Index cp_length() const noexcept { return l_cp_; }      ///< L_CP
    Index elements() const noexcept { return m_; }          ///< M
    Index blocks() const noexcept { return m_ + 1; }
    Index training() const noexcept { return n_z_; }        ///< N_z
    Index subsequences() const noexcept { return n_ / l_; } ///< N_s
    Index data_subsequences() const noexcept { return subsequences() - n_z_; }
    Index block_length() const noexcept { return l_cp_ + n_; }  ///< L_P
    Index training_length() const noexcept { return n_z_ * l_; }

private:
    Index n_, l_, l_cp_, m_, n_z_;
};

enum class FrameStyle { Baseline, Periodic };

struct PilotBlock {
    ComplexVec symbols;  ///< s_k, frequency domain
    ComplexVec samples;  ///< x_k = idft(s_k), time domain, CP not included
};

class PilotRejectedError : public std::invalid_argument {
public:
    PilotRejectedError(const std::string& what, Index eigen_index)
        : std::invalid_argument(what), index_(eigen_index) {}
    Index index() const noexcept { return index_; }

private:
    Index index_;
};

class PilotFrame {
public:
    FrameStyle style() const noexcept { return style_; }
    Index cp_length() const noexcept { return cp_len_; }
    Index blocks() const noexcept { return static_cast<Index>(blocks_.size()); }
    const PilotBlock& block(Index k) const { return blocks_.at(static_cast<std::size_t>(k)); }

    /// Subcarriers the receiver treats as known pilots (baseline frames).
    const std::vector<Index>& pilot_subcarriers() const noexcept { return pilots_; }

    /// Length-L training sequence z_k of block k (periodic frames only).
    const ComplexVec& training_sequence(Index k) const;

    friend PilotFrame build_baseline_pilots(const FrameGeometry&, RandomStream&, Index);
    friend PilotFrame build_baseline_pilots(const FrameGeometry&, const ComplexVec&, RandomStream&);
    friend PilotFrame build_periodic_pilots(const FrameGeometry&, const std::vector<ComplexVec>&,
                                            RandomStream&);

private:
    FrameStyle style_ = FrameStyle::Baseline;
    Index cp_len_ = 0;
    std::vector<PilotBlock> blocks_;
    std::vector<Index> pilots_;
    std::vector<ComplexVec> training_;
};

/// QPSK on every subcarrier. The first `pilot_count` comb positions
/// n = i * N / pilot_count are the known pilots; the rest carry payload.
/// pilot_count == 0 selects all N subcarriers.
PilotFrame build_baseline_pilots(const FrameGeometry& geom, RandomStream& rng,
                                 Index pilot_count = 0);

/// Comb of comb_symbols.size() known pilots carrying the given symbols; the
/// remaining subcarriers carry QPSK payload from `data_rng`.
PilotFrame build_baseline_pilots(const FrameGeometry& geom, const ComplexVec& comb_symbols,
                                 RandomStream& data_rng);

/// Time-domain frame x_k = [z, z, ..., z (N_z times), payload]. The payload is
/// unit-power QPSK drawn from `data_rng`. Throws PilotRejectedError if
/// circulant(z) is singular.
PilotFrame build_periodic_pilots(const FrameGeometry& geom, const ComplexVec& training,
                                 RandomStream& data_rng);

/// Per-block training sequences, one per pilot block.
PilotFrame build_periodic_pilots(const FrameGeometry& geom,
                                 const std::vector<ComplexVec>& training_per_block,
                                 RandomStream& data_rng);

/// Prepend the last `cp_length` samples.
ComplexVec add_cp(const ComplexVec& samples, Index cp_length);

/// Drop the first `cp_length` samples.
ComplexVec remove_cp(const ComplexVec& samples, Index cp_length);

}  // namespace riscfo

#endif  // RISCFO_FRAME_HPP
