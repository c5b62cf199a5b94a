#include "ssd/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ssd {

OracleResult ml_oracle(std::span<const double> y, const CodeSpec &spec, const ChannelParams &params)
{
	spec.validate();
	params.validate();
	if (spec.K > kMaxOracleDimension)
		throw std::invalid_argument("ML oracle refuses K = " + std::to_string(spec.K) + " (limit " + std::to_string(kMaxOracleDimension) + ")");
	if (y.size() != size_t(spec.N))
		throw std::invalid_argument("received vector length does not match N");

	const int N = spec.N;
	const auto info = spec.info_positions();
	const double amplitude = std::sqrt(params.E);

	// codeword rows of F for each information position, as plain bytes
	std::vector<Bits> generator_rows;
	for (int pos : info) {
		Bits unit(size_t(N), 0);
		unit[size_t(pos)] = 1;
		generator_rows.push_back(GeneratorMatrix(spec.n).transform(unit));
	}

	Bits v(size_t(N), 0), x(size_t(N), 0);
	OracleResult best;
	best.final_radius_sq = std::numeric_limits<double>::infinity();

	const uint64_t count = uint64_t(1) << spec.K;
	for (uint64_t step = 0; step < count; ++step) {
		if (step > 0) {
			// Gray code: flip one information bit
			const int k = __builtin_ctzll(step);
			v[size_t(info[size_t(k)])] ^= 1;
			const Bits &row = generator_rows[size_t(k)];
			for (int l = 0; l < N; ++l)
				x[size_t(l)] ^= row[size_t(l)];
		}
		double d = 0;
		for (int l = N - 1; l >= 0; --l) {
			const double diff = y[size_t(l)] - amplitude * (1.0 - 2.0 * x[size_t(l)]);
			d += diff * diff;
		}
		if (d < best.final_radius_sq) {
			best.final_radius_sq = d;
			best.v_hat = v;
			best.minimizers = 1;
		} else if (d == best.final_radius_sq) {
			++best.minimizers;
			if (v < best.v_hat)
				best.v_hat = v;
		}
	}
	best.u_hat = bit_reverse_permute(best.v_hat);
	return best;
}

double likelihood_l1(std::span<const uint8_t> v_suffix, std::span<const double> y, const ChannelParams &params)
{
	params.validate();
	const size_t N = y.size();
	if (v_suffix.size() > N)
		throw std::invalid_argument("path longer than the received vector");
	const size_t undecided = N - v_suffix.size();
	if (undecided > size_t(kMaxMarginalizedBits))
		throw std::invalid_argument("likelihood oracle refuses to marginalize " + std::to_string(undecided) + " symbols");

	int n = 0;
	while ((size_t(1) << n) < N)
		++n;
	if ((size_t(1) << n) != N)
		throw std::invalid_argument("received vector length is not a power of two");

	// s_l = 1 - 2 sum_{j>=l} f_jl v_j, with f_jl = 1 iff the bits of l are a subset of those of j
	std::vector<double> s(N, 0.0);
	for (size_t l = undecided; l < N; ++l) {
		int parity = 0;
		for (size_t j = l; j < N; ++j)
			if ((j & l) == l)
				parity ^= v_suffix[j - undecided];
		s[l] = 1.0 - 2.0 * parity;
	}

	const double amplitude = std::sqrt(params.E);
	const double norm = 1.0 / std::sqrt(std::numbers::pi * params.N0);
	auto density = [&](double yl, double sl) {
		const double diff = yl - amplitude * sl;
		return norm * std::exp(-diff * diff / params.N0);
	};

	double decided = 1.0;
	for (size_t l = undecided; l < N; ++l)
		decided *= density(y[l], s[l]);

	double total = 0;
	for (uint64_t d = 0; d < (uint64_t(1) << undecided); ++d) {
		double p = decided;
		for (size_t l = 0; l < undecided; ++l)
			p *= density(y[l], ((d >> l) & 1) ? -1.0 : 1.0);
		total += p;
	}
	return total / double(uint64_t(1) << undecided);
}

} // namespace ssd
