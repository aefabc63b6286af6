#include "uft/reduction.hpp"

#include "uft/error.hpp"
#include "uft/rand.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>
#include <utility>

namespace uft {

namespace {

constexpr std::uint64_t kMaxTreeNodes = 10'000'000;

std::uint32_t floor_log2(std::uint64_t v) {
    std::uint32_t e = 0;
    while (v >>= 1) ++e;
    return e;
}

// Shared structural checks: size, positivity, divisibility, strict window.
// Returns the target B.
std::uint64_t check_common(std::uint32_t m, const std::vector<std::uint64_t>& values) {
    if (m == 0) throw std::invalid_argument("instance: m must be at least 1");
    if (values.size() != static_cast<std::size_t>(m) * 3) {
        throw std::invalid_argument("instance: expected " + std::to_string(3 * m) +
                                    " values, got " + std::to_string(values.size()));
    }
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == 0) {
            throw std::invalid_argument("instance: value " + std::to_string(i + 1) +
                                        " must be positive");
        }
        if (sum > std::numeric_limits<std::uint64_t>::max() - values[i]) {
            throw std::invalid_argument("instance: value sum overflows");
        }
        sum += values[i];
    }
    if (sum % m != 0) {
        throw std::invalid_argument("instance: value sum " + std::to_string(sum) +
                                    " is not divisible by m = " + std::to_string(m));
    }
    const std::uint64_t target = sum / m;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (4 * values[i] <= target || 2 * values[i] >= target) {
            throw std::invalid_argument("instance: value " + std::to_string(i + 1) + " (" +
                                        std::to_string(values[i]) +
                                        ") must lie strictly between B/4 and B/2 for B = " +
                                        std::to_string(target));
        }
    }
    return target;
}

} // namespace

ThreePartitionInstance validate_instance(std::uint32_t m,
                                         const std::vector<std::uint64_t>& values) {
    const std::uint64_t target = check_common(m, values);
    const std::uint32_t exp2 = floor_log2(target);
    const std::uint64_t rem = target - (std::uint64_t{1} << exp2);
    if (rem < 1 || rem > 3 || exp2 <= 3) {
        throw std::invalid_argument("instance: target " + std::to_string(target) +
                                    " is not of the form 2^D + d with D > 3 and d in {1,2,3}");
    }
    ThreePartitionInstance inst;
    inst.m = m;
    inst.values = values;
    inst.target = target;
    inst.exp2 = exp2;
    inst.rem = static_cast<std::uint32_t>(rem);
    return inst;
}

ThreePartitionInstance normalize_instance(std::uint32_t m,
                                          const std::vector<std::uint64_t>& values) {
    const std::uint64_t target = check_common(m, values);
    std::uint32_t ceil_exp = floor_log2(target);
    if ((std::uint64_t{1} << ceil_exp) < target) ++ceil_exp;
    const std::uint64_t pow = std::max<std::uint64_t>(std::uint64_t{1} << ceil_exp, 16);
    const std::uint64_t shift = (1 + pow - target + 2) / 3; // ceil((1 + pow - target) / 3)
    std::vector<std::uint64_t> shifted;
    shifted.reserve(values.size());
    for (std::uint64_t v : values) shifted.push_back(v + shift);
    return validate_instance(m, shifted);
}

std::pair<Tree, ChargeContext> build_tree(const ThreePartitionInstance& inst) {
    const std::uint64_t h = inst.target + (std::uint64_t{1} << (inst.exp2 - 1)) - 1;
    const std::uint32_t baskets = inst.m - 1;
    const std::uint64_t powers_per_copy = (std::uint64_t{1} << (inst.exp2 - 1)) - 1;
    std::uint64_t total = 1;                                   // root
    total += static_cast<std::uint64_t>(baskets) * (h + 2);    // basket + its star
    total += h + 1;                                            // solo heavy star
    for (std::uint64_t v : inst.values) total += v;            // value stars
    total += static_cast<std::uint64_t>(inst.m) * powers_per_copy; // power stars
    if (total > kMaxTreeNodes) {
        throw std::invalid_argument("instance too large to materialize: " +
                                    std::to_string(total) + " nodes");
    }

    std::vector<NodeId> parent(total + 1, 0);
    NodeId next = 2;
    auto star = [&](NodeId attach_to, std::uint64_t size) {
        NodeId head = next++;
        parent[head] = attach_to;
        for (std::uint64_t i = 1; i < size; ++i) parent[next++] = head;
        return head;
    };

    for (std::uint32_t b = 0; b < baskets; ++b) {
        NodeId basket = next++;
        parent[basket] = 1;
        star(basket, h + 1);
    }
    star(1, h + 1);
    for (std::uint64_t v : inst.values) star(1, v);
    for (std::uint32_t copy = 0; copy < inst.m; ++copy) {
        for (std::uint32_t j = 0; j + 1 < inst.exp2; ++j) {
            star(1, std::uint64_t{1} << j);
        }
    }

    return {Tree::from_parents_unchecked(std::move(parent), 1), ChargeContext{h}};
}

namespace {

bool assign_triples(const std::vector<std::uint64_t>& values, std::uint64_t target,
                    std::vector<std::uint8_t>& used,
                    std::vector<std::array<std::uint32_t, 3>>& out) {
    std::uint32_t anchor = 0;
    while (anchor < values.size() && used[anchor]) ++anchor;
    if (anchor == values.size()) return true;
    used[anchor] = 1;
    for (std::uint32_t j = anchor + 1; j < values.size(); ++j) {
        if (used[j] || values[anchor] + values[j] >= target) continue;
        const std::uint64_t need = target - values[anchor] - values[j];
        for (std::uint32_t k = j + 1; k < values.size(); ++k) {
            if (used[k] || values[k] != need) continue;
            used[j] = used[k] = 1;
            out.push_back({anchor + 1, j + 1, k + 1});
            if (assign_triples(values, target, used, out)) return true;
            out.pop_back();
            used[j] = used[k] = 0;
        }
    }
    used[anchor] = 0;
    return false;
}

} // namespace

std::optional<TripletPartition> solve_3partition(const ThreePartitionInstance& inst) {
    std::vector<std::uint8_t> used(inst.values.size(), 0);
    TripletPartition p;
    if (!assign_triples(inst.values, inst.target, used, p.triples)) return std::nullopt;
    return p;
}

std::pair<std::uint32_t, std::vector<std::uint64_t>> parse_instance(std::string_view text) {
    // Line 1 holds m, line 2 the 3m values. Reuses the tree tokenizer rules.
    std::size_t header_end = text.find('\n');
    std::string_view header =
        text.substr(0, header_end == std::string_view::npos ? text.size() : header_end);
    std::string_view body =
        header_end == std::string_view::npos ? std::string_view{} : text.substr(header_end + 1);

    auto lex = [](std::string_view chunk, std::size_t first_line) {
        std::vector<std::pair<std::uint64_t, std::size_t>> toks;
        std::size_t line = first_line;
        std::size_t i = 0;
        while (i < chunk.size()) {
            char c = chunk[i];
            if (c == '\n') {
                ++line;
                ++i;
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r') {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < chunk.size() && chunk[j] != ' ' && chunk[j] != '\t' &&
                   chunk[j] != '\r' && chunk[j] != '\n') {
                ++j;
            }
            std::uint64_t value = 0;
            auto res = std::from_chars(chunk.data() + i, chunk.data() + j, value);
            if (res.ec != std::errc{} || res.ptr != chunk.data() + j) {
                throw ParseError("malformed integer '" + std::string(chunk.substr(i, j - i)) +
                                     "'",
                                 line);
            }
            toks.emplace_back(value, line);
            i = j;
        }
        return toks;
    };

    auto head = lex(header, 1);
    if (head.size() != 1) throw ParseError("expected a single group count m", 1);
    if (head[0].first == 0 || head[0].first > (1u << 20)) {
        throw ParseError("group count m out of range", 1);
    }
    const std::uint32_t m = static_cast<std::uint32_t>(head[0].first);
    auto vals = lex(body, 2);
    if (vals.size() != static_cast<std::size_t>(m) * 3) {
        throw ParseError("expected " + std::to_string(3 * m) + " values, found " +
                             std::to_string(vals.size()),
                         2);
    }
    std::vector<std::uint64_t> values;
    values.reserve(vals.size());
    for (auto& [v, line] : vals) values.push_back(v);
    return {m, std::move(values)};
}

std::string serialize_instance(std::uint32_t m, const std::vector<std::uint64_t>& values) {
    std::string out = std::to_string(m);
    out += '\n';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(values[i]);
    }
    out += '\n';
    return out;
}

std::string format_triplets(const TripletPartition& p) {
    std::string out;
    for (const auto& t : p.triples) {
        out += std::to_string(t[0]);
        out += ' ';
        out += std::to_string(t[1]);
        out += ' ';
        out += std::to_string(t[2]);
        out += '\n';
    }
    return out;
}

ThreePartitionInstance random_instance(std::uint32_t m, std::uint32_t exp2, std::uint32_t rem,
                                       std::uint64_t seed) {
    if (m == 0) throw std::invalid_argument("random_instance: m must be at least 1");
    if (exp2 <= 3 || exp2 >= 32 || rem < 1 || rem > 3) {
        throw std::invalid_argument("random_instance: target must be 2^D + d, D in 4..31, "
                                    "d in {1,2,3}");
    }
    const std::uint64_t target = (std::uint64_t{1} << exp2) + rem;
    const std::uint64_t lo = target / 4 + 1;       // smallest value > B/4
    const std::uint64_t hi = (target - 1) / 2;     // largest value < B/2
    SplitMix64 rng(seed);
    std::vector<std::uint64_t> values;
    values.reserve(static_cast<std::size_t>(m) * 3);
    for (std::uint32_t i = 0; i < m; ++i) {
        while (true) {
            std::uint64_t a = rng.between(lo, hi);
            std::uint64_t b = rng.between(lo, hi);
            if (a + b >= target) continue;
            std::uint64_t c = target - a - b;
            if (c < lo || c > hi) continue;
            values.push_back(a);
            values.push_back(b);
            values.push_back(c);
            break;
        }
    }
    for (std::size_t i = values.size(); i > 1; --i) {
        std::swap(values[i - 1], values[rng.below(i)]);
    }
    return validate_instance(m, values);
}

} // namespace uft
