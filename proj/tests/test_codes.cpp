#include <doctest.h>

#include <algorithm>
#include <random>

#include "ssd/codes.hpp"

using namespace ssd;

namespace {

// Dense Kronecker power built the slow way, as the reference for F.
std::vector<Bits> kronecker_power(int n)
{
	std::vector<Bits> m{{1}};
	for (int level = 0; level < n; ++level) {
		const size_t size = m.size();
		std::vector<Bits> next(2 * size, Bits(2 * size, 0));
		for (size_t r = 0; r < 2 * size; ++r)
			for (size_t c = 0; c < 2 * size; ++c) {
				const int kernel = (r / size == 0 && c / size == 1) ? 0 : 1;
				next[r][c] = uint8_t(kernel & m[r % size][c % size]);
			}
		m = std::move(next);
	}
	return m;
}

Bits matrix_multiply(std::span<const uint8_t> v, const GeneratorMatrix &F)
{
	Bits x(v.size(), 0);
	for (int i = 0; i < F.length(); ++i)
		for (int j = i; j < F.length(); ++j)
			x[size_t(i)] ^= uint8_t(F.at(j, i) & v[size_t(j)]);
	return x;
}

// Erasure probability of v_i given v_1..v_{i-1}, each codeword symbol erased
// with probability 1/2: v_i is recoverable iff e_i lies in span of the known
// columns once the earlier bits are removed. Counts erasure patterns.
std::vector<double> genie_erasure_probability(int n)
{
	const int N = 1 << n;
	const auto F = kronecker_power(n);
	std::vector<double> prob(size_t(N), 0.0);
	for (uint32_t known = 0; known < (1u << N); ++known) {
		for (int i = 0; i < N; ++i) {
			// unknowns v_i..v_N; observed x_l for known l: sum_{j>=i} f[j][l] v_j
			// v_i is determined iff no nonzero solution with v_i = 1 maps to zero observations
			bool ambiguous = false;
			const int free_bits = N - i - 1;
			for (uint32_t rest = 0; rest < (1u << free_bits) && !ambiguous; ++rest) {
				bool zero = true;
				for (int l = 0; l < N && zero; ++l) {
					if (!((known >> l) & 1))
						continue;
					int parity = F[size_t(i)][size_t(l)];
					for (int j = i + 1; j < N; ++j)
						parity ^= F[size_t(j)][size_t(l)] & ((rest >> (j - i - 1)) & 1);
					zero = parity == 0;
				}
				ambiguous = zero;
			}
			if (ambiguous)
				prob[size_t(i)] += 1.0;
		}
	}
	for (auto &p : prob)
		p /= double(1u << N);
	return prob;
}

} // namespace

TEST_CASE("generator matrix small cases")
{
	auto F0 = build_generator(0);
	CHECK(F0.length() == 1);
	CHECK(F0.at(0, 0));

	auto F1 = build_generator(1);
	CHECK(F1.at(0, 0));
	CHECK_FALSE(F1.at(0, 1));
	CHECK(F1.at(1, 0));
	CHECK(F1.at(1, 1));

	const std::vector<Bits> expected{{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 1, 1, 1}};
	auto F2 = build_generator(2);
	for (int r = 0; r < 4; ++r)
		for (int c = 0; c < 4; ++c)
			CHECK(F2.at(r, c) == bool(expected[size_t(r)][size_t(c)]));
}

TEST_CASE("generator matrix matches the Kronecker power and its invariants")
{
	for (int n = 0; n <= 6; ++n) {
		const auto F = build_generator(n);
		const auto ref = kronecker_power(n);
		for (int j = 0; j < F.length(); ++j) {
			int weight = 0;
			for (int i = 0; i < F.length(); ++i) {
				REQUIRE(F.at(j, i) == bool(ref[size_t(j)][size_t(i)]));
				if (j < i)
					CHECK_FALSE(F.at(j, i));
				weight += F.at(j, i);
				CHECK(bool((F.column(i)[size_t(j >> 6)] >> (j & 63)) & 1) == F.at(j, i));
			}
			CHECK(F.at(j, j));
			CHECK(weight == F.row_weight(j));
		}
	}
}

TEST_CASE("generator bounds")
{
	CHECK_THROWS_AS(build_generator(-1), std::invalid_argument);
	CHECK_THROWS_AS(build_generator(kMaxLog2Length + 1), std::invalid_argument);
}

TEST_CASE("transform is self-inverse for every vector up to n = 4")
{
	for (int n = 0; n <= 4; ++n) {
		const auto F = build_generator(n);
		const int N = F.length();
		for (uint32_t word = 0; word < (1u << N); ++word) {
			Bits v(static_cast<size_t>(N));
			for (int i = 0; i < N; ++i)
				v[size_t(i)] = (word >> i) & 1;
			const Bits x = F.transform(v);
			REQUIRE(x == matrix_multiply(v, F));
			REQUIRE(F.transform(x) == v);
		}
	}
}

TEST_CASE("bit reversal")
{
	CHECK(bit_reverse_permute(Bits{1, 0}) == Bits{1, 0});
	// (a,b,c,d) -> (a,c,b,d)
	CHECK(bit_reverse_permute(Bits{1, 2, 3, 4}) == Bits{1, 3, 2, 4});
	CHECK_THROWS_AS(bit_reverse_permute(Bits{1, 0, 1}), std::invalid_argument);
	CHECK_THROWS_AS(bit_reverse_permute(Bits{}), std::invalid_argument);

	std::mt19937 rng(3);
	for (int n = 0; n <= 8; ++n) {
		Bits b(size_t(1) << n);
		for (auto &x : b)
			x = uint8_t(rng() & 1);
		CHECK(bit_reverse_permute(bit_reverse_permute(b)) == b);
	}
}

TEST_CASE("Bhattacharyya recursion")
{
	auto z1 = bhattacharyya_parameters(1);
	CHECK(z1 == std::vector<double>{0.75, 0.25});
	auto z2 = bhattacharyya_parameters(2);
	CHECK(z2 == std::vector<double>{0.9375, 0.5625, 0.4375, 0.0625});

	// for a BEC(1/2) the parameter is the genie-aided erasure probability of v_i
	for (int n = 1; n <= 3; ++n) {
		const auto z = bhattacharyya_parameters(n);
		const auto brute = genie_erasure_probability(n);
		for (size_t i = 0; i < z.size(); ++i)
			CHECK(z[i] == doctest::Approx(brute[i]).epsilon(1e-12));
	}
}

TEST_CASE("polar construction")
{
	auto c11 = construct_polar(1, 1);
	CHECK(c11.info_positions() == std::vector<int>{1});
	CHECK(c11.frozen_mask == Bits{1, 0});

	auto c22 = construct_polar(2, 2);
	CHECK(c22.info_positions() == std::vector<int>{2, 3});

	auto full = construct_polar(4, 16);
	CHECK(std::all_of(full.frozen_mask.begin(), full.frozen_mask.end(), [](uint8_t b) { return b == 0; }));

	CHECK_THROWS_AS(construct_polar(3, 0), std::invalid_argument);
	CHECK_THROWS_AS(construct_polar(3, 9), std::invalid_argument);

	for (int n = 1; n <= 7; ++n)
		for (int K = 1; K <= (1 << n); K += 3) {
			const auto spec = construct_polar(n, K);
			CHECK_NOTHROW(spec.validate());
			CHECK(int(spec.info_positions().size()) == K);
			CHECK(spec == construct_polar(n, K));
		}
}

TEST_CASE("polar construction breaks reliability ties toward the larger index")
{
	// at n = 7 the five least reliable channels all saturate at Z = 1
	const auto z = bhattacharyya_parameters(7);
	std::vector<int> saturated;
	for (int i = 0; i < 128; ++i)
		if (z[size_t(i)] == 1.0)
			saturated.push_back(i);
	REQUIRE(saturated.size() == 5);
	const auto spec = construct_polar(7, 124);
	for (int i : saturated)
		CHECK(spec.frozen(i) == (i != saturated.back()));

	// (64,57): indices 1,2,3,4,5,9,17 are the least reliable
	auto big = construct_polar(6, 57);
	std::vector<int> frozen;
	for (int i = 0; i < 64; ++i)
		if (big.frozen(i))
			frozen.push_back(i + 1);
	CHECK(frozen == std::vector<int>{1, 2, 3, 4, 5, 9, 17});
}

TEST_CASE("Reed-Muller construction")
{
	CHECK(rm_dimensions(6) == std::vector<int>{1, 7, 22, 42, 57, 63, 64});

	auto rm = construct_rm(6, 57);
	CHECK(rm.info_positions().size() == 57);
	for (int j = 0; j < 64; ++j)
		CHECK(rm.frozen(j) == (__builtin_popcount(unsigned(j)) < 2));
	for (int p : rm.info_positions())
		CHECK(build_generator(6).row_weight(p) >= 4);

	CHECK(construct_rm(2, 3).info_positions() == std::vector<int>{1, 2, 3});
	auto full = construct_rm(3, 8);
	CHECK(std::count(full.frozen_mask.begin(), full.frozen_mask.end(), 1) == 0);

	try {
		construct_rm(6, 50);
		FAIL("expected invalid_argument");
	} catch (const std::invalid_argument &e) {
		const std::string msg = e.what();
		CHECK(msg.find("42") != std::string::npos);
		CHECK(msg.find("57") != std::string::npos);
	}
}

TEST_CASE("encode")
{
	const auto spec = construct_polar(3, 4);
	CHECK(encode(Bits(8, 0), spec).x == Bits(8, 0));

	// N = 2, v = (0,1) -> x = (1,1)
	const auto rate_one = construct_polar(1, 2);
	const auto enc = encode(unscramble(Bits{0, 1}), rate_one);
	CHECK(enc.v == Bits{0, 1});
	CHECK(enc.x == Bits{1, 1});

	Bits bad(8, 0);
	bad[0] = 1;
	REQUIRE(spec.frozen(0));
	CHECK_THROWS_AS(encode(unscramble(bad), spec), std::invalid_argument);
	CHECK_THROWS_AS(encode(Bits(4, 0), spec), std::invalid_argument);
}

TEST_CASE("encode is linear and agrees with the per-symbol sum")
{
	std::mt19937 rng(11);
	const auto spec = construct_polar(6, 40);
	const auto F = build_generator(6);
	auto random_source = [&] {
		Bits info(size_t(spec.K));
		for (auto &b : info)
			b = uint8_t(rng() & 1);
		return source_from_info(info, spec);
	};
	for (int trial = 0; trial < 200; ++trial) {
		const Bits a = random_source(), b = random_source();
		Bits sum(a.size());
		for (size_t i = 0; i < a.size(); ++i)
			sum[i] = a[i] ^ b[i];
		const auto xa = encode(a, spec, F).x, xb = encode(b, spec, F).x;
		const auto xs = encode(sum, spec, F);
		for (size_t i = 0; i < a.size(); ++i)
			REQUIRE(xs.x[i] == (xa[i] ^ xb[i]));
		// x_i = sum_{j>=i} f_ji v_j
		REQUIRE(xs.x == matrix_multiply(xs.v, F));
	}
}

TEST_CASE("unscramble")
{
	CHECK(unscramble(Bits{1, 0, 1, 0}) == Bits{1, 1, 0, 0});
	CHECK(unscramble(Bits(16, 0)) == Bits(16, 0));
	const Bits u{1, 1, 0, 1, 0, 0, 1, 0};
	CHECK(unscramble(bit_reverse_permute(u)) == u);
}

TEST_CASE("hex and json round trip")
{
	CHECK(bits_to_hex(Bits{1, 0, 0, 0, 0, 0, 0, 1}) == "81");
	CHECK(bits_to_hex(Bits{1, 1}) == "c");
	CHECK(bits_from_hex("c", 2) == Bits{1, 1});
	CHECK_THROWS_AS(bits_from_hex("d", 2), std::invalid_argument);
	CHECK_THROWS_AS(bits_from_hex("zz", 8), std::invalid_argument);

	for (const auto &spec : {construct_polar(6, 57), construct_rm(6, 57), construct_polar(0, 1), construct_rm(4, 11)}) {
		const auto doc = to_json(spec);
		CHECK(doc.at("info_indices").size() == size_t(spec.K));
		CHECK(code_spec_from_json(doc) == spec);
	}
	auto doc = to_json(construct_polar(3, 4));
	doc["K"] = 5;
	CHECK_THROWS_AS(code_spec_from_json(doc), std::invalid_argument);
}
