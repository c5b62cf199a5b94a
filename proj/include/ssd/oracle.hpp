/*
Brute-force references used to check the decoder and the metrics.

Nothing here shares code with the search or the metric tables: the ML
oracle enumerates every codeword, and the likelihood oracle marginalizes
the undecided prefix by explicit enumeration.
*/

#pragma once

#include <span>

#include "ssd/channel.hpp"
#include "ssd/codes.hpp"
#include "ssd/decoder.hpp"

namespace ssd {

inline constexpr int kMaxOracleDimension = 20;
inline constexpr int kMaxMarginalizedBits = 20;

struct OracleResult : DecodeResult
{
	/// Number of codewords attaining the minimum SED (1 unless there is an exact tie).
	int minimizers = 0;
};

/// argmin_v |y - sqrt(E)(1 - 2vF)|^2 over all 2^K valid v; exact ties go
/// to the lexicographically smallest v (v_1 most significant).
OracleResult ml_oracle(std::span<const double> y, const CodeSpec &spec, const ChannelParams &params);

/// L1 = sum over d in {+1,-1}^(i-1) of P(y | s_i^N, d) 2^-(i-1) with the
/// full Gaussian density. `v_suffix` holds v_i..v_N.
double likelihood_l1(std::span<const uint8_t> v_suffix, std::span<const double> y, const ChannelParams &params);

} // namespace ssd
