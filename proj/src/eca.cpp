#include "ecaprog/eca.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "ecaprog/rng.hpp"
#include "ecaprog/simd.hpp"

namespace ecaprog {

Rule Rule::from_number(int number) {
    if (number < 0 || number > 255) {
        throw std::domain_error("rule number out of range [0,255]: " + std::to_string(number));
    }
    return Rule(static_cast<std::uint8_t>(number));
}

std::array<bool, 8> Rule::table() const {
    std::array<bool, 8> t{};
    for (unsigned v = 0; v < 8; ++v) t[v] = output(v);
    return t;
}

Rule rule_table(int number) { return Rule::from_number(number); }

Configuration::Configuration(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {
    if (width < 3) throw std::domain_error("configuration width must be >= 3");
}

Configuration Configuration::from_string(std::string_view bits) {
    Configuration c(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            c.set(i, true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("configuration string must contain only '0' and '1'");
        }
    }
    return c;
}

void Configuration::set(std::size_t i, bool value) {
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    if (value) {
        words_[i / 64] |= bit;
    } else {
        words_[i / 64] &= ~bit;
    }
}

std::size_t Configuration::popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::string Configuration::to_string() const {
    std::string s(width_, '0');
    simd::active_kernels().expand_bits(words_.data(), width_, s.data());
    return s;
}

Configuration Configuration::rotated(std::size_t k) const {
    Configuration out(width_);
    for (std::size_t i = 0; i < width_; ++i) {
        if (get(i)) out.set((i + k) % width_, true);
    }
    return out;
}

namespace {

std::uint64_t tail_mask(std::size_t width) {
    const std::size_t rem = width % 64;
    return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

// left[i] = cells[i-1], right[i] = cells[i+1], both cyclic.
void neighbor_words(const Configuration& c, std::vector<std::uint64_t>& left,
                    std::vector<std::uint64_t>& right) {
    const auto w = c.words();
    const std::size_t n = w.size();
    const std::size_t width = c.width();
    left.assign(n, 0);
    right.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        left[i] = (w[i] << 1) | (i > 0 ? (w[i - 1] >> 63) : 0);
        right[i] = (w[i] >> 1) | (i + 1 < n ? (w[i + 1] << 63) : 0);
    }
    const std::uint64_t mask = tail_mask(width);
    left[n - 1] &= mask;
    right[n - 1] &= mask;
    if (c.get(width - 1)) left[0] |= 1;
    if (c.get(0)) right[(width - 1) / 64] |= std::uint64_t{1} << ((width - 1) % 64);
}

}  // namespace

Configuration step(Rule rule, const Configuration& config) {
    const std::size_t width = config.width();
    Configuration out(width);
    std::vector<std::uint64_t> left;
    std::vector<std::uint64_t> right;
    neighbor_words(config, left, right);
    const auto center = config.words();
    auto dst = out.words();
    simd::active_kernels().apply_rule(left.data(), center.data(), right.data(), dst.data(),
                                      dst.size(), rule.number());
    dst[dst.size() - 1] &= tail_mask(width);
    return out;
}

Configuration step_reference(Rule rule, const Configuration& config) {
    const std::size_t width = config.width();
    Configuration out(width);
    for (std::size_t i = 0; i < width; ++i) {
        const bool l = config.get((i + width - 1) % width);
        const bool c = config.get(i);
        const bool r = config.get((i + 1) % width);
        out.set(i, rule.output(l, c, r));
    }
    return out;
}

SpaceTimeDiagram evolve(Rule rule, const Configuration& init, std::size_t t) {
    SpaceTimeDiagram d{rule, {}};
    d.rows.reserve(t + 1);
    d.rows.push_back(init);
    for (std::size_t k = 0; k < t; ++k) d.rows.push_back(step(rule, d.rows.back()));
    return d;
}

Configuration random_config(std::size_t width, double density, std::uint64_t seed) {
    if (!(density >= 0.0 && density <= 1.0)) {
        throw std::domain_error("density must lie in [0,1]");
    }
    Configuration c(width);
    Rng rng(seed);
    for (std::size_t i = 0; i < width; ++i) c.set(i, rng.bernoulli(density));
    return c;
}

Configuration single_cell_config(std::size_t width) {
    Configuration c(width);
    c.set(width / 2, true);
    return c;
}

std::vector<Configuration> gray_enumeration(std::size_t width, std::uint64_t n) {
    if (n < 1) throw std::domain_error("gray_enumeration needs n >= 1");
    if (width < 64 && n > (std::uint64_t{1} << width)) {
        throw std::domain_error("gray_enumeration: n exceeds 2^width");
    }
    std::vector<Configuration> out;
    out.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        const std::uint64_t g = k ^ (k >> 1);
        Configuration c(width);
        for (std::size_t b = 0; b < width && b < 64; ++b) {
            if ((g >> b) & 1u) c.set(width - 1 - b, true);
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace ecaprog
