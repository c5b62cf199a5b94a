#include "ssd/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ssd {

void ChannelParams::validate() const
{
	if (!(E > 0) || !std::isfinite(E))
		throw std::invalid_argument("signal energy E must be positive, got " + std::to_string(E));
	if (!(N0 > 0) || !std::isfinite(N0))
		throw std::invalid_argument("noise density N0 must be positive, got " + std::to_string(N0));
}

ChannelParams ebn0_to_params(double ebn0_db, int N, int K)
{
	if (K < 1 || N < K)
		throw std::invalid_argument("invalid code dimensions for Eb/N0 conversion");
	ChannelParams p;
	p.E = 1.0;
	const double eb = p.E * double(N) / double(K);
	p.N0 = eb / std::pow(10.0, ebn0_db / 10.0);
	return p;
}

std::vector<double> bpsk_map(std::span<const uint8_t> x)
{
	std::vector<double> s(x.size());
	for (size_t i = 0; i < x.size(); ++i)
		s[i] = 1.0 - 2.0 * double(x[i] & 1);
	return s;
}

namespace {

uint64_t splitmix64(uint64_t z)
{
	z += 0x9e3779b97f4a7c15ull;
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
	return z ^ (z >> 31);
}

} // namespace

uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b)
{
	return splitmix64(splitmix64(splitmix64(master) ^ a) ^ b);
}

std::vector<double> transmit(std::span<const double> s, const ChannelParams &params, Rng &rng)
{
	if (!(params.E > 0) || params.N0 < 0)
		throw std::invalid_argument("invalid channel parameters");
	const double amplitude = std::sqrt(params.E);
	std::vector<double> y(s.size());
	if (params.N0 == 0) {
		for (size_t i = 0; i < s.size(); ++i)
			y[i] = amplitude * s[i];
		return y;
	}
	std::normal_distribution<double> noise(0.0, std::sqrt(params.noise_variance()));
	for (size_t i = 0; i < s.size(); ++i)
		y[i] = amplitude * s[i] + noise(rng);
	return y;
}

} // namespace ssd
