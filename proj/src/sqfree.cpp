#include "pgap/sqfree.hpp"

#include "pgap/errors.hpp"
#include "pgap/numutil.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pgap::sqfree {

namespace {

std::uint64_t checked_pow(std::uint64_t m, unsigned n) {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (v > UINT64_MAX / m) throw std::overflow_error("m^n overflows 64 bits");
        v *= m;
    }
    return v;
}

void require_wellformed(const ResidueSet& r) {
    if (r.modulus < 2 || !is_squarefree(r.modulus))
        throw std::domain_error("residue set modulus must be squarefree and >= 2");
    for (auto v : r.residues)
        if (v >= r.modulus) throw std::domain_error("residue out of range");
}

}  // namespace

bool is_squarefree(std::uint64_t m) {
    if (m == 0) return false;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        m /= p;
        if (m % p == 0) return false;
    }
    return true;
}

ResidueSet make_residue_set(std::uint64_t modulus, std::vector<std::uint32_t> residues) {
    ResidueSet r{modulus, std::move(residues)};
    std::sort(r.residues.begin(), r.residues.end());
    r.residues.erase(std::unique(r.residues.begin(), r.residues.end()), r.residues.end());
    require_wellformed(r);
    return r;
}

QRTable squares_mod(std::uint64_t m) {
    if (m < 2) throw std::domain_error("squares_mod requires m >= 2");
    QRTable q;
    q.modulus = m;
    q.is_square.assign(m, 0);
    for (std::uint64_t x = 0; x < m; ++x) q.is_square[(x * x) % m] = 1;
    for (std::uint64_t v = 0; v < m; ++v)
        if (q.is_square[v]) q.squares.push_back(static_cast<std::uint32_t>(v));
    return q;
}

bool is_sdf_residue_set(const ResidueSet& r) {
    require_wellformed(r);
    QRTable q = squares_mod(r.modulus);
    const std::uint64_t m = r.modulus;
    for (std::size_t i = 0; i < r.residues.size(); ++i) {
        for (std::size_t j = 0; j < r.residues.size(); ++j) {
            if (i == j) continue;
            std::uint64_t d = (r.residues[i] + m - r.residues[j]) % m;
            if (q.is_square[d]) return false;
        }
    }
    return true;
}

ResidueSet ruzsa_65() {
    // (mod 5, mod 13) pairs glued by CRT: x = 26 r5 + 40 r13 (mod 65).
    static constexpr std::pair<int, int> pairs[] = {{0, 0}, {0, 2}, {1, 8}, {2, 1},
                                                    {2, 3}, {3, 9}, {4, 7}};
    std::vector<std::uint32_t> residues;
    for (auto [r5, r13] : pairs)
        residues.push_back(static_cast<std::uint32_t>((26 * r5 + 40 * r13) % 65));
    return make_residue_set(65, std::move(residues));
}

ResidueSet shifted_family(const ResidueSet& r, std::uint64_t a) {
    require_wellformed(r);
    if (a >= r.modulus) throw std::domain_error("shift a must satisfy 0 <= a < m");
    std::vector<std::uint32_t> shifted;
    shifted.reserve(r.residues.size());
    for (auto v : r.residues) shifted.push_back(static_cast<std::uint32_t>((v + a) % r.modulus));
    return make_residue_set(r.modulus, std::move(shifted));
}

namespace {

// Tomita-style branch and bound with greedy coloring upper bounds.
// Vertices are pre-sorted by descending degree; exploration order is fixed
// so the reported witness is deterministic.
class CliqueSearch {
  public:
    CliqueSearch(std::vector<std::vector<std::uint64_t>> adj, std::uint64_t budget)
        : adj_(std::move(adj)), budget_(budget) {}

    void run(const std::vector<int>& initial_order) {
        std::vector<int> r;
        expand(r, initial_order);
    }

    const std::vector<int>& best() const { return best_; }
    bool aborted() const { return aborted_; }
    std::uint64_t nodes() const { return nodes_; }

  private:
    bool adjacent(int a, int b) const {
        return (adj_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b) >> 6] >>
                (static_cast<std::size_t>(b) & 63)) &
               1;
    }

    void expand(std::vector<int>& r, const std::vector<int>& p) {
        if (aborted_) return;
        if (++nodes_ > budget_) {
            aborted_ = true;
            return;
        }
        if (p.empty()) {
            if (r.size() > best_.size()) best_ = r;
            return;
        }

        // greedy coloring: classes in discovery order, vertices re-emitted
        // class by class so colors ascend along `order`
        std::vector<std::vector<int>> classes;
        for (int v : p) {
            std::size_t k = 0;
            for (; k < classes.size(); ++k) {
                bool clash = false;
                for (int u : classes[k])
                    if (adjacent(u, v)) {
                        clash = true;
                        break;
                    }
                if (!clash) break;
            }
            if (k == classes.size()) classes.emplace_back();
            classes[k].push_back(v);
        }
        std::vector<int> order;
        std::vector<int> color;
        order.reserve(p.size());
        color.reserve(p.size());
        for (std::size_t k = 0; k < classes.size(); ++k)
            for (int v : classes[k]) {
                order.push_back(v);
                color.push_back(static_cast<int>(k) + 1);
            }

        for (std::size_t idx = order.size(); idx-- > 0;) {
            int v = order[idx];
            if (r.size() + static_cast<std::size_t>(color[idx]) <= best_.size()) return;
            std::vector<int> next;
            next.reserve(idx);
            for (std::size_t j = 0; j < idx; ++j)
                if (adjacent(v, order[j])) next.push_back(order[j]);
            r.push_back(v);
            expand(r, next);
            r.pop_back();
            if (aborted_) return;
        }
    }

    std::vector<std::vector<std::uint64_t>> adj_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    std::vector<int> best_;
};

}  // namespace

MaxSdfResult max_sdf_residues(std::uint64_t m, SearchMode mode, std::uint64_t node_budget) {
    (void)mode;  // both modes run the same bounded search; `optimal` reports completion
    if (m < 2 || !is_squarefree(m)) throw std::domain_error("max_sdf_residues requires squarefree m >= 2");
    QRTable q = squares_mod(m);

    const std::size_t n = static_cast<std::size_t>(m);
    const std::size_t words = (n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> adj(n, std::vector<std::uint64_t>(words, 0));
    std::vector<int> degree(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            std::uint64_t d1 = (a + m - b) % m;
            std::uint64_t d2 = (b + m - a) % m;
            if (!q.is_square[d1] && !q.is_square[d2]) {
                adj[a][b >> 6] |= std::uint64_t{1} << (b & 63);
                adj[b][a >> 6] |= std::uint64_t{1} << (a & 63);
                ++degree[a];
                ++degree[b];
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)];
    });

    CliqueSearch search(std::move(adj), node_budget);
    search.run(order);

    std::vector<std::uint32_t> witness;
    for (int v : search.best()) witness.push_back(static_cast<std::uint32_t>(v));
    MaxSdfResult out;
    out.size = static_cast<unsigned>(witness.size());
    out.witness = make_residue_set(m, std::move(witness));
    out.optimal = !search.aborted();
    out.nodes = search.nodes();
    return out;
}

bool digit_set_contains(const DigitTupleSpec& spec, const ResidueSet& r, std::uint64_t s) {
    const std::uint64_t m = spec.modulus;
    std::uint64_t max_value = checked_pow(m, spec.digits);
    if (s < 1 || s > max_value) return false;
    std::uint64_t d = s - 1;
    for (unsigned j = 0; j < spec.digits; ++j) {
        std::uint64_t digit = d % m;
        d /= m;
        if (j % 2 == 0) {
            std::uint64_t unshifted = (digit + m - spec.shifts[j / 2]) % m;
            if (!std::binary_search(r.residues.begin(), r.residues.end(),
                                    static_cast<std::uint32_t>(unshifted)))
                return false;
        }
    }
    return true;
}

SDFSet build_digit_set(const DigitTupleSpec& spec, const ResidueSet& r) {
    require_wellformed(r);
    if (spec.modulus != r.modulus) throw std::domain_error("digit spec and residue set moduli differ");
    if (spec.digits < 1) throw std::domain_error("digit count must be >= 1");
    if (spec.shifts.size() != (spec.digits + 1) / 2)
        throw std::domain_error("one shift required per even digit position");
    for (auto sh : spec.shifts)
        if (sh >= spec.modulus) throw std::domain_error("shift out of range");
    if (!is_sdf_residue_set(r)) throw std::domain_error("residue set must be square-difference free");

    const std::uint64_t m = spec.modulus;
    const unsigned n = spec.digits;
    // digit choices per position, ascending
    std::vector<std::vector<std::uint32_t>> choices(n);
    for (unsigned j = 0; j < n; ++j) {
        if (j % 2 == 0) {
            ResidueSet shifted = shifted_family(r, spec.shifts[j / 2]);
            choices[j] = shifted.residues;
        } else {
            choices[j].resize(static_cast<std::size_t>(m));
            std::iota(choices[j].begin(), choices[j].end(), 0);
        }
    }

    std::vector<std::uint64_t> elements;
    std::size_t total = 1;
    for (auto& c : choices) total *= c.size();
    elements.reserve(total);

    std::vector<std::size_t> idx(n, 0);
    while (true) {
        std::uint64_t s = 0;
        std::uint64_t scale = 1;
        for (unsigned j = 0; j < n; ++j) {
            s += choices[j][idx[j]] * scale;
            scale *= m;
        }
        elements.push_back(s + 1);
        unsigned j = 0;
        for (; j < n; ++j) {
            if (++idx[j] < choices[j].size()) break;
            idx[j] = 0;
        }
        if (j == n) break;
    }
    std::sort(elements.begin(), elements.end());

    SDFSet out;
    out.elements = std::move(elements);
    out.spec = spec;
    return out;
}

BestTupleResult best_tuple_for_primes(std::uint64_t m, unsigned n, const ResidueSet& r,
                                      const PrimeTable& t) {
    require_wellformed(r);
    if (n < 1) throw std::domain_error("n must be >= 1");
    std::uint64_t mn = checked_pow(m, n);
    if (t.limit() < mn) throw insufficient_table_error("best_tuple_for_primes needs table limit >= m^n");

    const unsigned e = (n + 1) / 2;  // number of even positions
    std::uint64_t tuple_space = checked_pow(m, e);
    if (tuple_space > (std::uint64_t{1} << 28)) throw std::overflow_error("shift tuple space too large");

    std::vector<std::uint64_t> counts(static_cast<std::size_t>(tuple_space), 0);
    std::vector<std::uint64_t> compatible;  // shift choices for one even position

    // per-position powers of m used to index the tuple matrix
    std::vector<std::uint64_t> pos_scale(e);
    for (unsigned j = 0; j < e; ++j) pos_scale[j] = checked_pow(m, j);

    std::size_t prime_limit_idx = t.count_upto(mn);
    const auto& ps = t.primes();
    std::vector<std::uint32_t> digit(e);
    for (std::size_t pi = 0; pi < prime_limit_idx; ++pi) {
        std::uint64_t d = ps[pi] - 1;
        for (unsigned j = 0; j < n; ++j) {
            if (j % 2 == 0) digit[j / 2] = static_cast<std::uint32_t>(d % m);
            d /= m;
        }
        // credit every tuple whose shift at each even position is
        // digit - r (mod m) for some r in R
        std::vector<std::size_t> pick(e, 0);
        while (true) {
            std::uint64_t index = 0;
            for (unsigned j = 0; j < e; ++j) {
                std::uint64_t shift = (digit[j] + m - r.residues[pick[j]]) % m;
                index += shift * pos_scale[j];
            }
            ++counts[static_cast<std::size_t>(index)];
            unsigned j = 0;
            for (; j < e; ++j) {
                if (++pick[j] < r.residues.size()) break;
                pick[j] = 0;
            }
            if (j == e) break;
        }
    }

    // arg max with lexicographically-smallest-tuple tie break
    auto decode = [&](std::uint64_t index) {
        std::vector<std::uint32_t> tup(e);
        for (unsigned j = 0; j < e; ++j) {
            tup[j] = static_cast<std::uint32_t>(index % m);
            index /= m;
        }
        return tup;
    };
    std::uint64_t best_index = 0;
    std::vector<std::uint32_t> best_tuple = decode(0);
    for (std::uint64_t i = 1; i < tuple_space; ++i) {
        if (counts[static_cast<std::size_t>(i)] < counts[static_cast<std::size_t>(best_index)]) continue;
        auto tup = decode(i);
        if (counts[static_cast<std::size_t>(i)] > counts[static_cast<std::size_t>(best_index)] ||
            tup < best_tuple) {
            best_index = i;
            best_tuple = std::move(tup);
        }
    }

    BestTupleResult out;
    out.spec = DigitTupleSpec{m, n, best_tuple};
    out.prime_count = counts[static_cast<std::size_t>(best_index)];
    out.tuple_counts = std::move(counts);
    return out;
}

Theorem5Witness theorem5_witness(std::uint64_t x, std::uint64_t m, const ResidueSet& r,
                                 const PrimeTable& t, mpfr_prec_t precision_bits) {
    require_wellformed(r);
    if (x < 17) throw std::domain_error("theorem5_witness requires x >= 17");
    if (t.limit() < x) throw insufficient_table_error("theorem5_witness needs table limit >= x");
    if (m > x) throw std::domain_error("theorem5_witness requires m <= x");

    unsigned n = 0;
    std::uint64_t power = 1;
    while (power <= x / m) {
        power *= m;
        ++n;
    }
    // now power = m^n <= x < m^(n+1)

    BestTupleResult best = best_tuple_for_primes(m, n, r, t);

    std::vector<std::uint64_t> primes;
    std::size_t upper = t.count_upto(power);
    for (std::size_t i = 0; i < upper; ++i)
        if (digit_set_contains(best.spec, r, t.primes()[i])) primes.push_back(t.primes()[i]);

    const mpfr_prec_t prec = precision_bits;
    IntervalReal xiv = IntervalReal::from_ulong(x, prec);
    IntervalReal half = IntervalReal::from_rational(mpq_class(1, 2), prec);
    IntervalReal gamma =
        half + IntervalReal::log(IntervalReal::from_ulong(r.residues.size(), prec)) /
                   (IntervalReal::from_long(2, prec) * IntervalReal::log(IntervalReal::from_ulong(m, prec)));
    IntervalReal bound = IntervalReal::exp(gamma * IntervalReal::log(xiv)) /
                         (IntervalReal::from_ulong(m, prec) * IntervalReal::log(xiv));

    Theorem5Witness out;
    out.primes.elements = std::move(primes);
    out.primes.spec = best.spec;
    out.primes.label = "primes <= " + std::to_string(power) + " in the best digit set";
    out.bound = bound.to_certified("x^gamma/(m log x) at x=" + std::to_string(x) + ", m=" + std::to_string(m));
    out.gamma = gamma.to_certified("1/2 + log|R|/(2 log m)");
    out.meets_bound = mpq_class(static_cast<unsigned long>(out.primes.elements.size())) >= bound.hi_rational();
    out.n = n;
    return out;
}

}  // namespace pgap::sqfree
