#pragma once
// Elementary cellular automata: rules, bit-packed configurations, evolution
// and input enumeration. Boundaries are cyclic.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ecaprog {

/// An ECA local rule in Wolfram numbering. Neighborhood (l, c, r) selects bit
/// v = 4l + 2c + r of the rule number.
class Rule {
 public:
    constexpr Rule() = default;

    /// Throws std::domain_error unless 0 <= number <= 255.
    static Rule from_number(int number);

    constexpr std::uint8_t number() const { return number_; }
    constexpr bool output(unsigned neighborhood) const { return ((number_ >> neighborhood) & 1u) != 0; }
    constexpr bool output(bool l, bool c, bool r) const { return output((l ? 4u : 0u) | (c ? 2u : 0u) | (r ? 1u : 0u)); }

    std::array<bool, 8> table() const;

    friend constexpr bool operator==(Rule, Rule) = default;

 private:
    constexpr explicit Rule(std::uint8_t n) : number_(n) {}
    std::uint8_t number_ = 0;
};

/// Same as Rule::from_number.
Rule rule_table(int number);

/// A row of cells, width >= 3, packed LSB-first into 64-bit words. Bits past
/// the width in the last word are always zero.
class Configuration {
 public:
    Configuration() = default;
    explicit Configuration(std::size_t width);

    /// Parses '0'/'1' characters; anything else throws std::invalid_argument.
    static Configuration from_string(std::string_view bits);

    std::size_t width() const { return width_; }
    bool get(std::size_t i) const { return ((words_[i / 64] >> (i % 64)) & 1u) != 0; }
    void set(std::size_t i, bool value);

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    std::size_t popcount() const;
    std::string to_string() const;

    /// Cyclic rotation: result[(i + k) mod width] = this[i].
    Configuration rotated(std::size_t k) const;

    friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
    std::size_t width_ = 0;
    std::vector<std::uint64_t> words_;
};

struct SpaceTimeDiagram {
    Rule rule;
    std::vector<Configuration> rows;  // rows[0] is the initial condition

    std::size_t steps() const { return rows.empty() ? 0 : rows.size() - 1; }
    std::size_t width() const { return rows.empty() ? 0 : rows.front().width(); }
};

/// One synchronous update through the active SIMD kernel.
Configuration step(Rule rule, const Configuration& config);

/// Cell-by-cell reference update; the oracle for step().
Configuration step_reference(Rule rule, const Configuration& config);

SpaceTimeDiagram evolve(Rule rule, const Configuration& init, std::size_t t);

/// Each cell is 1 with probability `density`; deterministic in `seed`.
Configuration random_config(std::size_t width, double density, std::uint64_t seed);

/// One live cell at floor(width / 2).
Configuration single_cell_config(std::size_t width);

/// First n entries of the binary-reflected Gray sequence. Entry k is
/// k ^ (k >> 1) written MSB-first, so the last cell holds bit 0.
std::vector<Configuration> gray_enumeration(std::size_t width, std::uint64_t n);

}  // namespace ecaprog
