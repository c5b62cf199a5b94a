/*
Polar and Reed-Muller code construction and encoding

Code positions are stored 0-based. Where documentation talks about
"index j" it means the 1-based position j, stored at slot j-1.
*/

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace ssd {

using Bits = std::vector<uint8_t>;

/// Largest supported log2 block length.
inline constexpr int kMaxLog2Length = 20;

/// Lower-triangular Kronecker power F = [1 0; 1 1]^(x n), stored densely
/// as one bitset per row and per column.
class GeneratorMatrix
{
public:
	explicit GeneratorMatrix(int n);

	int log2_length() const { return n_; }
	int length() const { return length_; }
	int words_per_row() const { return words_; }

	/// Entry f[row][col], 0-based.
	bool at(int row, int col) const
	{
		return (rows_[size_t(row) * words_ + (col >> 6)] >> (col & 63)) & 1;
	}

	/// Bitset of row `row`: bit c set iff f[row][c] = 1.
	std::span<const uint64_t> row(int row) const
	{
		return {rows_.data() + size_t(row) * words_, size_t(words_)};
	}

	/// Bitset of column `col`: bit r set iff f[r][col] = 1.
	std::span<const uint64_t> column(int col) const
	{
		return {cols_.data() + size_t(col) * words_, size_t(words_)};
	}

	/// Hamming weight of row `row` (always 2^popcount(row)).
	int row_weight(int row) const { return 1 << __builtin_popcount(unsigned(row)); }

	/// x = vF over GF(2) via the butterfly transform.
	Bits transform(std::span<const uint8_t> v) const;

private:
	int n_;
	int length_;
	int words_;
	std::vector<uint64_t> rows_;
	std::vector<uint64_t> cols_;
};

GeneratorMatrix build_generator(int n);

enum class Construction
{
	PolarBhattacharyya,
	ReedMuller,
};

std::string to_string(Construction c);
Construction construction_from_string(const std::string &name);

struct CodeSpec
{
	int n = 0;
	int N = 1;
	int K = 1;
	Construction construction = Construction::PolarBhattacharyya;
	/// Over v-indices; 1 = frozen (value 0).
	Bits frozen_mask;

	bool frozen(int pos) const { return frozen_mask[size_t(pos)] != 0; }
	/// Unfrozen v positions in ascending order (0-based).
	std::vector<int> info_positions() const;
	/// Checks the invariants; throws std::invalid_argument.
	void validate() const;

	friend bool operator==(const CodeSpec &, const CodeSpec &) = default;
};

/// Bhattacharyya parameters of the N synthetic channels under the erasure
/// recursion Z -> (2Z - Z^2, Z^2), started at `z0`. Indexed by v position.
std::vector<double> bhattacharyya_parameters(int n, double z0 = 0.5);

CodeSpec construct_polar(int n, int K);
CodeSpec construct_rm(int n, int K);
/// Dispatches on the family name "polar" or "rm".
CodeSpec construct_code(const std::string &family, int n, int K);

/// Valid Reed-Muller dimensions sum_{k<=r} C(n,k) for r = 0..n.
std::vector<int> rm_dimensions(int n);

/// Bit-reversal permutation B; an involution.
Bits bit_reverse_permute(std::span<const uint8_t> bits);

struct Encoded
{
	Bits v;
	Bits x;
};

/// x = (uB)F. Throws if u carries a 1 on a frozen position.
Encoded encode(std::span<const uint8_t> u, const CodeSpec &spec, const GeneratorMatrix &F);
Encoded encode(std::span<const uint8_t> u, const CodeSpec &spec);

/// Inverse of the scrambling step, u = vB.
Bits unscramble(std::span<const uint8_t> v_hat);

/// Places `info` (K bits) on the information positions of v and returns u = vB.
Bits source_from_info(std::span<const uint8_t> info, const CodeSpec &spec);

std::string bits_to_hex(std::span<const uint8_t> bits);
Bits bits_from_hex(const std::string &hex, int length);

nlohmann::json to_json(const CodeSpec &spec);
CodeSpec code_spec_from_json(const nlohmann::json &doc);

} // namespace ssd
