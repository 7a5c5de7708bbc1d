#include "qtfock/combinatorics.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qtfock {

namespace {

int env_guard(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return fallback;
    char* end = nullptr;
    long parsed = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || parsed < 1 || parsed > 64) return fallback;
    return static_cast<int>(parsed);
}

}  // namespace

int pairing_guard() {
    static const int g = env_guard("QTFOCK_PAIRING_GUARD", 10);
    return g;
}

int permutation_guard() {
    static const int g = env_guard("QTFOCK_PERM_GUARD", 8);
    return g;
}

// ---------------------------------------------------------------------------
// Pair partitions
// ---------------------------------------------------------------------------

PairPartition PairPartition::from_pairs(std::vector<std::pair<int, int>> raw) {
    for (auto& [a, b] : raw) {
        if (a == b) throw std::invalid_argument("pair partition: degenerate pair");
        if (a > b) std::swap(a, b);
    }
    std::sort(raw.begin(), raw.end());
    const int n2 = 2 * static_cast<int>(raw.size());
    std::vector<bool> seen(static_cast<size_t>(n2) + 1, false);
    for (const auto& [a, b] : raw) {
        for (int x : {a, b}) {
            if (x < 1 || x > n2) throw std::invalid_argument("pair partition: element out of range");
            if (seen[static_cast<size_t>(x)])
                throw std::invalid_argument("pair partition: repeated element");
            seen[static_cast<size_t>(x)] = true;
        }
    }
    return PairPartition{std::move(raw)};
}

int crossings(const PairPartition& v) {
    int c = 0;
    const int n = v.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // openers are sorted, so w_i < w_j always holds
            if (v.pairs[j].first < v.pairs[i].second && v.pairs[i].second < v.pairs[j].second) ++c;
        }
    return c;
}

int nestings(const PairPartition& v) {
    int c = 0;
    const int n = v.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (v.pairs[j].second < v.pairs[i].second) ++c;
        }
    return c;
}

int alignments(const PairPartition& v) {
    int c = 0;
    const int n = v.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (v.pairs[i].second < v.pairs[j].first) ++c;
        }
    return c;
}

namespace {

void pairings_rec(int n2, std::vector<bool>& used, PairPartition& cur,
                  const std::function<void(const PairPartition&)>& visit) {
    int first = -1;
    for (int x = 1; x <= n2; ++x) {
        if (!used[static_cast<size_t>(x)]) {
            first = x;
            break;
        }
    }
    if (first < 0) {
        visit(cur);
        return;
    }
    used[static_cast<size_t>(first)] = true;
    for (int y = first + 1; y <= n2; ++y) {
        if (used[static_cast<size_t>(y)]) continue;
        used[static_cast<size_t>(y)] = true;
        cur.pairs.emplace_back(first, y);
        pairings_rec(n2, used, cur, visit);
        cur.pairs.pop_back();
        used[static_cast<size_t>(y)] = false;
    }
    used[static_cast<size_t>(first)] = false;
}

// Non-crossing pairings of the elements `ground[lo..hi)`, first-pair style.
void nc_rec(const std::vector<int>& ground, size_t lo, size_t hi, PairPartition& cur,
            const std::function<void(PairPartition&)>& done) {
    if (lo == hi) {
        done(cur);
        return;
    }
    // ground[lo] pairs with some element an odd distance away; the inside and
    // outside blocks are then matched independently.
    for (size_t k = lo + 1; k < hi; k += 2) {
        cur.pairs.emplace_back(ground[lo], ground[k]);
        nc_rec(ground, lo + 1, k, cur,
               [&](PairPartition& c) { nc_rec(ground, k + 1, hi, c, done); });
        cur.pairs.pop_back();
    }
}

}  // namespace

void for_each_pair_partition(int n, const std::function<void(const PairPartition&)>& visit) {
    if (n < 0) throw std::invalid_argument("for_each_pair_partition: n must be >= 0");
    std::vector<bool> used(static_cast<size_t>(2 * n) + 1, false);
    PairPartition cur;
    cur.pairs.reserve(static_cast<size_t>(n));
    // pairing the smallest unused element first yields canonical order directly
    pairings_rec(2 * n, used, cur, visit);
}

void for_each_noncrossing_pairing(int n, const std::function<void(const PairPartition&)>& visit) {
    if (n < 0) throw std::invalid_argument("for_each_noncrossing_pairing: n must be >= 0");
    std::vector<int> ground(static_cast<size_t>(2 * n));
    std::iota(ground.begin(), ground.end(), 1);
    PairPartition cur;
    cur.pairs.reserve(static_cast<size_t>(n));
    nc_rec(ground, 0, ground.size(), cur, [&](PairPartition& c) {
        // pairs are produced opener-sorted; openers appear in scan order
        visit(c);
    });
}

std::vector<PairPartition> enumerate_pair_partitions(int n, int guard) {
    if (n < 1) throw std::invalid_argument("enumerate_pair_partitions: n must be >= 1");
    if (n > guard)
        throw GuardError("enumerate_pair_partitions: n = " + std::to_string(n) +
                         " exceeds guard " + std::to_string(guard) +
                         " ((2n-1)!! partitions would be materialized)");
    std::vector<PairPartition> out;
    for_each_pair_partition(n, [&](const PairPartition& v) { out.push_back(v); });
    return out;
}

mpz_class double_factorial_odd(int n) {
    mpz_class r = 1;
    for (int k = 2 * n - 1; k > 1; k -= 2) r *= k;
    return r;
}

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

Permutation Permutation::identity(int n) {
    Permutation p;
    p.images.resize(static_cast<size_t>(n));
    std::iota(p.images.begin(), p.images.end(), 1);
    return p;
}

void Permutation::validate() const {
    const int n = size();
    std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
    for (int v : images) {
        if (v < 1 || v > n || seen[static_cast<size_t>(v)])
            throw std::invalid_argument("permutation: not a bijection of [n]");
        seen[static_cast<size_t>(v)] = true;
    }
}

Permutation Permutation::inverse() const {
    Permutation r;
    r.images.resize(images.size());
    for (size_t i = 0; i < images.size(); ++i)
        r.images[static_cast<size_t>(images[i] - 1)] = static_cast<int>(i) + 1;
    return r;
}

int inversions(const Permutation& s) {
    int c = 0;
    const int n = s.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (s.images[static_cast<size_t>(i)] > s.images[static_cast<size_t>(j)]) ++c;
    return c;
}

int coinversions(const Permutation& s) {
    int c = 0;
    const int n = s.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (s.images[static_cast<size_t>(i)] < s.images[static_cast<size_t>(j)]) ++c;
    return c;
}

void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit) {
    Permutation p = Permutation::identity(n);
    do {
        visit(p);
    } while (std::next_permutation(p.images.begin(), p.images.end()));
}

PairPartition pairing_from_permutation(const Permutation& s) {
    const int n = s.size();
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i)
        pairs.emplace_back(i, 2 * n + 1 - s.images[static_cast<size_t>(i - 1)]);
    return PairPartition::from_pairs(std::move(pairs));
}

// ---------------------------------------------------------------------------
// Words and paths
// ---------------------------------------------------------------------------

std::vector<int> word_to_path(const EpsilonWord& e) {
    std::vector<int> steps;
    steps.reserve(e.size());
    for (EpsilonLetter l : e) steps.push_back(l == EpsilonLetter::create ? 1 : -1);
    return steps;
}

EpsilonWord moment_reversal(const EpsilonWord& e) {
    return EpsilonWord(e.rbegin(), e.rend());
}

namespace {

bool is_dyck_steps(const std::vector<int>& steps) {
    if (steps.size() % 2 != 0) return false;
    int h = 0;
    for (int s : steps) {
        h += s;
        if (h < 0) return false;
    }
    return h == 0;
}

void matchings_of_word(const EpsilonWord& w, size_t pos, std::vector<int>& open,
                       PairPartition& cur, std::vector<PairPartition>& out) {
    if (pos == w.size()) {
        out.push_back(PairPartition::from_pairs(cur.pairs));
        return;
    }
    if (w[pos] == EpsilonLetter::create) {
        open.push_back(static_cast<int>(pos) + 1);
        matchings_of_word(w, pos + 1, open, cur, out);
        open.pop_back();
    } else {
        // closer: pick any currently open opener
        for (size_t i = 0; i < open.size(); ++i) {
            int opener = open[i];
            open.erase(open.begin() + static_cast<std::ptrdiff_t>(i));
            cur.pairs.emplace_back(opener, static_cast<int>(pos) + 1);
            matchings_of_word(w, pos + 1, open, cur, out);
            cur.pairs.pop_back();
            open.insert(open.begin() + static_cast<std::ptrdiff_t>(i), opener);
        }
    }
}

void dyck_words_rec(int remaining, int height, EpsilonWord& cur,
                    const std::function<void(const EpsilonWord&)>& visit) {
    if (remaining == 0) {
        if (height == 0) visit(cur);
        return;
    }
    if (height + remaining < 0 || height > remaining) return;  // cannot return to 0
    cur.push_back(EpsilonLetter::create);
    dyck_words_rec(remaining - 1, height + 1, cur, visit);
    cur.back() = EpsilonLetter::annihilate;
    if (height > 0) dyck_words_rec(remaining - 1, height - 1, cur, visit);
    cur.pop_back();
}

}  // namespace

bool is_dyck_moment_word(const EpsilonWord& e) {
    return is_dyck_steps(word_to_path(moment_reversal(e)));
}

std::vector<PairPartition> matching_class(const EpsilonWord& e) {
    if (!is_dyck_moment_word(e)) return {};
    const EpsilonWord r = moment_reversal(e);
    std::vector<PairPartition> out;
    std::vector<int> open;
    PairPartition cur;
    matchings_of_word(r, 0, open, cur, out);
    return out;
}

void for_each_dyck_word(int n, const std::function<void(const EpsilonWord&)>& visit) {
    EpsilonWord cur;
    cur.reserve(static_cast<size_t>(2 * n));
    dyck_words_rec(2 * n, 0, cur, visit);
}

// ---------------------------------------------------------------------------
// Generating polynomials
// ---------------------------------------------------------------------------

BivarPoly joint_cross_nest_polynomial(int n, int guard) {
    if (n < 0) throw std::invalid_argument("joint_cross_nest_polynomial: n must be >= 0");
    if (n > guard)
        throw GuardError("joint_cross_nest_polynomial: n exceeds pairing guard " +
                         std::to_string(guard));
    std::map<std::pair<int, int>, long> counts;
    for_each_pair_partition(n, [&](const PairPartition& v) {
        ++counts[{crossings(v), nestings(v)}];
    });
    BivarPoly p;
    for (const auto& [k, c] : counts) p.add_term(k.first, k.second, mpz_class(c));
    return p;
}

BivarPoly perm_inv_div_polynomial(int n, int guard) {
    if (n < 1) throw std::invalid_argument("perm_inv_div_polynomial: n must be >= 1");
    if (n > guard)
        throw GuardError("perm_inv_div_polynomial: n exceeds permutation guard " +
                         std::to_string(guard));
    std::map<std::pair<int, int>, long> counts;
    for_each_permutation(n, [&](const Permutation& s) {
        ++counts[{inversions(s), coinversions(s)}];
    });
    BivarPoly p;
    for (const auto& [k, c] : counts) p.add_term(k.first, k.second, mpz_class(c));
    return p;
}

}  // namespace qtfock
