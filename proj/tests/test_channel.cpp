#include <doctest.h>

#include <cmath>

#include "ssd/channel.hpp"
#include "ssd/codes.hpp"

using namespace ssd;

TEST_CASE("bpsk mapping")
{
	CHECK(bpsk_map(Bits{0}) == std::vector<double>{1.0});
	CHECK(bpsk_map(Bits{1}) == std::vector<double>{-1.0});
	const auto spec = construct_polar(5, 16);
	CHECK(bpsk_map(encode(Bits(32, 0), spec).x) == std::vector<double>(32, 1.0));
}

TEST_CASE("Eb/N0 conversion")
{
	auto p = ebn0_to_params(0.0, 8, 8);
	CHECK(p.E == 1.0);
	CHECK(p.N0 == doctest::Approx(1.0).epsilon(1e-15));
	CHECK(ebn0_to_params(10 * std::log10(2.0), 16, 8).N0 == doctest::Approx(1.0).epsilon(1e-14));
	CHECK(ebn0_to_params(3.0103, 16, 8).N0 == doctest::Approx(1.0).epsilon(1e-5));
	CHECK(ebn0_to_params(10.0, 4, 4).N0 == doctest::Approx(0.1).epsilon(1e-14));
	CHECK(p.noise_variance() == doctest::Approx(0.5));

	double previous = INFINITY;
	for (double db = -5; db <= 10; db += 0.25) {
		const double n0 = ebn0_to_params(db, 64, 57).N0;
		CHECK(n0 < previous);
		previous = n0;
	}
	CHECK_THROWS_AS(ebn0_to_params(1.0, 4, 0), std::invalid_argument);
}

TEST_CASE("parameter validation")
{
	CHECK_THROWS_AS((ChannelParams{0.0, 1.0}).validate(), std::invalid_argument);
	CHECK_THROWS_AS((ChannelParams{1.0, -1.0}).validate(), std::invalid_argument);
	CHECK_NOTHROW((ChannelParams{1.0, 1e-9}).validate());
}

TEST_CASE("noiseless transmission")
{
	Rng rng(5);
	const std::vector<double> s{1, -1, -1, 1};
	const auto y = transmit(s, ChannelParams{4.0, 0.0}, rng);
	CHECK(y == std::vector<double>{2, -2, -2, 2});
}

TEST_CASE("noise moments")
{
	Rng rng(derive_seed(42, 0, 0));
	const size_t count = 1'000'000;
	const std::vector<double> s(count, 1.0);
	const auto y = transmit(s, ChannelParams{1.0, 1.0}, rng);
	double mean = 0;
	for (double v : y)
		mean += v - 1.0;
	mean /= double(count);
	double var = 0;
	for (double v : y)
		var += (v - 1.0 - mean) * (v - 1.0 - mean);
	var /= double(count - 1);
	CHECK(std::abs(mean) < 0.005);
	CHECK(std::abs(var - 0.5) < 0.01);
}

TEST_CASE("seeded transmission is reproducible")
{
	const std::vector<double> s{1, -1, 1, 1, -1, -1, 1, -1};
	Rng a(derive_seed(9, 1, 2)), b(derive_seed(9, 1, 2)), c(derive_seed(9, 1, 3));
	const ChannelParams p{1.0, 0.7};
	const auto ya = transmit(s, p, a);
	CHECK(ya == transmit(s, p, b));
	CHECK(ya != transmit(s, p, c));
	CHECK(derive_seed(1, 0, 0) != derive_seed(1, 0, 1));
	CHECK(derive_seed(1, 0, 1) != derive_seed(1, 1, 0));
}
