/*
BPSK over AWGN: y = sqrt(E) s + w, w ~ N(0, N0/2)
*/

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace ssd {

struct ChannelParams
{
	double E = 1.0;
	double N0 = 1.0;

	double noise_variance() const { return N0 / 2; }
	/// Throws std::invalid_argument unless E > 0 and N0 > 0.
	void validate() const;
};

/// E = 1, Eb = E N / K, N0 = Eb / 10^(ebn0_db / 10).
ChannelParams ebn0_to_params(double ebn0_db, int N, int K);

/// s_i = 1 - 2 x_i
std::vector<double> bpsk_map(std::span<const uint8_t> x);

/// Counter-based seed derivation (splitmix64 finalizer over the words), so
/// every trial owns an independent stream regardless of execution order.
uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b = 0);

using Rng = std::mt19937_64;

/// Adds white Gaussian noise of variance N0/2 to sqrt(E) s. With N0 = 0
/// the output is noiseless.
std::vector<double> transmit(std::span<const double> s, const ChannelParams &params, Rng &rng);

} // namespace ssd
