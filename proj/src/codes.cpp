#include "ssd/codes.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ssd {

namespace {

int log2_exact(size_t length)
{
	if (length == 0 || (length & (length - 1)) != 0)
		throw std::invalid_argument("length " + std::to_string(length) + " is not a power of two");
	int n = 0;
	while ((size_t(1) << n) < length)
		++n;
	return n;
}

void check_log2(int n)
{
	if (n < 0 || n > kMaxLog2Length)
		throw std::invalid_argument("log2 block length " + std::to_string(n) + " outside [0, " + std::to_string(kMaxLog2Length) + "]");
}

unsigned reverse_bits(unsigned value, int width)
{
	unsigned out = 0;
	for (int b = 0; b < width; ++b)
		out |= ((value >> b) & 1u) << (width - 1 - b);
	return out;
}

} // namespace

GeneratorMatrix::GeneratorMatrix(int n) : n_(n)
{
	check_log2(n);
	length_ = 1 << n;
	words_ = (length_ + 63) / 64;
	rows_.assign(size_t(length_) * words_, 0);
	cols_.assign(size_t(length_) * words_, 0);
	// f[j][i] = 1 iff the binary digits of i are a subset of those of j
	for (int j = 0; j < length_; ++j) {
		for (int i = j;; i = (i - 1) & j) {
			rows_[size_t(j) * words_ + (i >> 6)] |= uint64_t(1) << (i & 63);
			cols_[size_t(i) * words_ + (j >> 6)] |= uint64_t(1) << (j & 63);
			if (i == 0)
				break;
		}
	}
}

Bits GeneratorMatrix::transform(std::span<const uint8_t> v) const
{
	if (v.size() != size_t(length_))
		throw std::invalid_argument("vector length " + std::to_string(v.size()) + " does not match N = " + std::to_string(length_));
	Bits x(v.begin(), v.end());
	for (int h = 1; h < length_; h *= 2)
		for (int i = 0; i < length_; i += 2 * h)
			for (int j = i; j < i + h; ++j)
				x[size_t(j)] ^= x[size_t(j + h)];
	return x;
}

GeneratorMatrix build_generator(int n)
{
	return GeneratorMatrix(n);
}

std::string to_string(Construction c)
{
	switch (c) {
	case Construction::PolarBhattacharyya:
		return "polar-bhattacharyya";
	case Construction::ReedMuller:
		return "reed-muller";
	}
	return "unknown";
}

Construction construction_from_string(const std::string &name)
{
	if (name == "polar-bhattacharyya")
		return Construction::PolarBhattacharyya;
	if (name == "reed-muller")
		return Construction::ReedMuller;
	throw std::invalid_argument("unknown construction '" + name + "'");
}

std::vector<int> CodeSpec::info_positions() const
{
	std::vector<int> out;
	out.reserve(size_t(K));
	for (int i = 0; i < N; ++i)
		if (!frozen(i))
			out.push_back(i);
	return out;
}

void CodeSpec::validate() const
{
	check_log2(n);
	if (N != (1 << n))
		throw std::invalid_argument("N = " + std::to_string(N) + " is not 2^" + std::to_string(n));
	if (K < 1 || K > N)
		throw std::invalid_argument("K = " + std::to_string(K) + " outside [1, " + std::to_string(N) + "]");
	if (frozen_mask.size() != size_t(N))
		throw std::invalid_argument("frozen mask length does not match N");
	auto frozen_count = std::count_if(frozen_mask.begin(), frozen_mask.end(), [](uint8_t b) { return b != 0; });
	if (frozen_count != N - K)
		throw std::invalid_argument("frozen mask has " + std::to_string(frozen_count) + " ones, expected N - K = " + std::to_string(N - K));
}

std::vector<double> bhattacharyya_parameters(int n, double z0)
{
	check_log2(n);
	std::vector<double> z{z0};
	for (int level = 0; level < n; ++level) {
		std::vector<double> next;
		next.reserve(z.size() * 2);
		for (double p : z) {
			next.push_back(2 * p - p * p);
			next.push_back(p * p);
		}
		z = std::move(next);
	}
	return z;
}

CodeSpec construct_polar(int n, int K)
{
	check_log2(n);
	const int N = 1 << n;
	if (K < 1 || K > N)
		throw std::invalid_argument("K = " + std::to_string(K) + " outside [1, " + std::to_string(N) + "]");
	auto z = bhattacharyya_parameters(n);
	std::vector<int> order(static_cast<size_t>(N));
	std::iota(order.begin(), order.end(), 0);
	// most reliable first; equal Z prefers the larger index
	std::sort(order.begin(), order.end(), [&](int a, int b) {
		if (z[size_t(a)] != z[size_t(b)])
			return z[size_t(a)] < z[size_t(b)];
		return a > b;
	});
	CodeSpec spec{n, N, K, Construction::PolarBhattacharyya, Bits(size_t(N), 1)};
	for (int k = 0; k < K; ++k)
		spec.frozen_mask[size_t(order[size_t(k)])] = 0;
	return spec;
}

std::vector<int> rm_dimensions(int n)
{
	check_log2(n);
	std::vector<int> dims;
	long binom = 1, total = 0;
	for (int r = 0; r <= n; ++r) {
		total += binom;
		dims.push_back(int(total));
		binom = binom * (n - r) / (r + 1);
	}
	return dims;
}

CodeSpec construct_rm(int n, int K)
{
	auto dims = rm_dimensions(n);
	const int N = 1 << n;
	auto it = std::find(dims.begin(), dims.end(), K);
	if (it == dims.end()) {
		auto above = std::lower_bound(dims.begin(), dims.end(), K);
		std::ostringstream msg;
		msg << "K = " << K << " is not a Reed-Muller dimension for n = " << n << "; nearest valid:";
		if (above != dims.begin())
			msg << ' ' << *std::prev(above);
		if (above != dims.end())
			msg << ' ' << *above;
		throw std::invalid_argument(msg.str());
	}
	const int order = int(it - dims.begin());
	CodeSpec spec{n, N, K, Construction::ReedMuller, Bits(size_t(N), 1)};
	// rows of weight >= 2^(n - order), i.e. popcount(j) >= n - order
	for (int j = 0; j < N; ++j)
		if (__builtin_popcount(unsigned(j)) >= n - order)
			spec.frozen_mask[size_t(j)] = 0;
	return spec;
}

CodeSpec construct_code(const std::string &family, int n, int K)
{
	if (family == "polar")
		return construct_polar(n, K);
	if (family == "rm")
		return construct_rm(n, K);
	throw std::invalid_argument("unknown code family '" + family + "' (expected polar or rm)");
}

Bits bit_reverse_permute(std::span<const uint8_t> bits)
{
	const int n = log2_exact(bits.size());
	Bits out(bits.size());
	for (unsigned p = 0; p < bits.size(); ++p)
		out[reverse_bits(p, n)] = bits[p];
	return out;
}

Encoded encode(std::span<const uint8_t> u, const CodeSpec &spec, const GeneratorMatrix &F)
{
	if (u.size() != size_t(spec.N))
		throw std::invalid_argument("source block length " + std::to_string(u.size()) + " does not match N = " + std::to_string(spec.N));
	if (F.length() != spec.N)
		throw std::invalid_argument("generator matrix size does not match code");
	Encoded out;
	out.v = bit_reverse_permute(u);
	for (int i = 0; i < spec.N; ++i)
		if (spec.frozen(i) && out.v[size_t(i)])
			throw std::invalid_argument("frozen v position " + std::to_string(i + 1) + " carries a nonzero bit");
	out.x = F.transform(out.v);
	return out;
}

Encoded encode(std::span<const uint8_t> u, const CodeSpec &spec)
{
	return encode(u, spec, GeneratorMatrix(spec.n));
}

Bits unscramble(std::span<const uint8_t> v_hat)
{
	return bit_reverse_permute(v_hat);
}

Bits source_from_info(std::span<const uint8_t> info, const CodeSpec &spec)
{
	if (info.size() != size_t(spec.K))
		throw std::invalid_argument("expected " + std::to_string(spec.K) + " information bits, got " + std::to_string(info.size()));
	Bits v(size_t(spec.N), 0);
	size_t k = 0;
	for (int i = 0; i < spec.N; ++i)
		if (!spec.frozen(i))
			v[size_t(i)] = info[k++] & 1;
	return bit_reverse_permute(v);
}

// Position 1 is the most significant bit of the first hex digit; the tail
// is zero-padded to a whole digit.
std::string bits_to_hex(std::span<const uint8_t> bits)
{
	static const char digits[] = "0123456789abcdef";
	std::string out;
	for (size_t i = 0; i < bits.size(); i += 4) {
		int nibble = 0;
		for (size_t b = 0; b < 4; ++b)
			nibble = (nibble << 1) | (i + b < bits.size() ? (bits[i + b] & 1) : 0);
		out.push_back(digits[nibble]);
	}
	return out;
}

Bits bits_from_hex(const std::string &hex, int length)
{
	if (length < 0 || hex.size() != size_t((length + 3) / 4))
		throw std::invalid_argument("hex string '" + hex + "' does not encode " + std::to_string(length) + " bits");
	Bits out(static_cast<size_t>(length));
	for (size_t d = 0; d < hex.size(); ++d) {
		const char c = char(std::tolower(static_cast<unsigned char>(hex[d])));
		int nibble;
		if (c >= '0' && c <= '9')
			nibble = c - '0';
		else if (c >= 'a' && c <= 'f')
			nibble = c - 'a' + 10;
		else
			throw std::invalid_argument("invalid hex digit '" + std::string(1, hex[d]) + "'");
		for (size_t b = 0; b < 4; ++b) {
			const size_t pos = d * 4 + b;
			const uint8_t bit = (nibble >> (3 - b)) & 1;
			if (pos < out.size())
				out[pos] = bit;
			else if (bit)
				throw std::invalid_argument("hex string has nonzero padding bits");
		}
	}
	return out;
}

nlohmann::json to_json(const CodeSpec &spec)
{
	std::vector<int> info;
	for (int p : spec.info_positions())
		info.push_back(p + 1);
	return {
		{"n", spec.n},
		{"N", spec.N},
		{"K", spec.K},
		{"construction", to_string(spec.construction)},
		{"frozen_mask", bits_to_hex(spec.frozen_mask)},
		{"info_indices", info},
	};
}

CodeSpec code_spec_from_json(const nlohmann::json &doc)
{
	CodeSpec spec;
	try {
		spec.n = doc.at("n").get<int>();
		spec.N = doc.at("N").get<int>();
		spec.K = doc.at("K").get<int>();
		spec.construction = construction_from_string(doc.at("construction").get<std::string>());
		spec.frozen_mask = bits_from_hex(doc.at("frozen_mask").get<std::string>(), spec.N);
	} catch (const nlohmann::json::exception &e) {
		throw std::invalid_argument(std::string("malformed code spec: ") + e.what());
	}
	spec.validate();
	if (doc.contains("info_indices")) {
		std::vector<int> expected;
		for (int p : spec.info_positions())
			expected.push_back(p + 1);
		if (doc.at("info_indices").get<std::vector<int>>() != expected)
			throw std::invalid_argument("info_indices disagree with frozen_mask");
	}
	return spec;
}

} // namespace ssd
