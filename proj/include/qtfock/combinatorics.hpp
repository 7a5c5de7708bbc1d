#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qtfock/bivar_poly.hpp"

namespace qtfock {

/// Raised when an enumeration would exceed its configured size guard.
class GuardError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Default guards for factorial-type enumerations.  Overridable through the
/// environment (QTFOCK_PAIRING_GUARD, QTFOCK_PERM_GUARD) or per call.
int pairing_guard();
int permutation_guard();

// ---------------------------------------------------------------------------
// Pair partitions
// ---------------------------------------------------------------------------

/// A perfect matching of [2n] in canonical form: each pair is (opener, closer)
/// with opener < closer, and pairs are sorted by increasing opener.
struct PairPartition {
    std::vector<std::pair<int, int>> pairs;

    int size() const { return static_cast<int>(pairs.size()); }
    int ground_size() const { return 2 * size(); }

    /// Canonicalize and validate an arbitrary list of pairs.
    static PairPartition from_pairs(std::vector<std::pair<int, int>> raw);

    friend bool operator==(const PairPartition& a, const PairPartition& b) {
        return a.pairs == b.pairs;
    }
};

int crossings(const PairPartition& v);
int nestings(const PairPartition& v);
/// Chord pairs that neither cross nor nest (disjoint intervals).
int alignments(const PairPartition& v);

/// Visit all (2n-1)!! pair partitions of [2n] in canonical form.
void for_each_pair_partition(int n, const std::function<void(const PairPartition&)>& visit);

/// Visit all non-crossing pair partitions of [2n], generated by the
/// first-pair decomposition: (1, 2k) splits the rest into the inside and
/// outside intervals.
void for_each_noncrossing_pairing(int n, const std::function<void(const PairPartition&)>& visit);

/// Materialized enumeration, guarded by `guard` (pairs count n).
std::vector<PairPartition> enumerate_pair_partitions(int n, int guard = pairing_guard());

/// (2n-1)!! as an exact integer.
mpz_class double_factorial_odd(int n);

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

/// One-line notation, images[i] = sigma(i+1), values 1..n.
struct Permutation {
    std::vector<int> images;

    int size() const { return static_cast<int>(images.size()); }
    static Permutation identity(int n);
    Permutation inverse() const;
    void validate() const;
};

int inversions(const Permutation& s);
int coinversions(const Permutation& s);

void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit);

/// The two-line map with reversed bottom row: sigma in S_n becomes the pair
/// partition {(i, 2n+1-sigma(i))}.  Sends inversions to crossings and
/// coinversions to nestings.
PairPartition pairing_from_permutation(const Permutation& s);

// ---------------------------------------------------------------------------
// Words and paths
// ---------------------------------------------------------------------------

/// Letters of an operator word read left to right: `create` marks a creation
/// operator (the paper's "*"), `annihilate` an annihilation operator ("1").
enum class EpsilonLetter : std::uint8_t { annihilate = 0, create = 1 };

using EpsilonWord = std::vector<EpsilonLetter>;

/// NE/SE heights of the word as written: creation = +1 step, annihilation = -1.
/// Returns the step sequence (+1/-1), one entry per letter.
std::vector<int> word_to_path(const EpsilonWord& e);

/// Moment computations act on the vacuum right to left, so every Dyck-path /
/// matching question is asked of the reversed word.  This is the single place
/// where that reversal happens.
EpsilonWord moment_reversal(const EpsilonWord& e);

/// True iff the reversed word maps to a Dyck path (creations as NE steps).
/// Mixed vacuum moments vanish exactly when this is false.
bool is_dyck_moment_word(const EpsilonWord& e);

/// All pairings whose opener/closer string equals the reversed word, i.e. the
/// equivalence class of the reversed word.  Positions in the returned pairings
/// index the reversed word (operator application order).  Empty when the word
/// is not a Dyck moment word.
std::vector<PairPartition> matching_class(const EpsilonWord& e);

/// Visit every word of length 2n whose path (as written) is a Dyck path.
void for_each_dyck_word(int n, const std::function<void(const EpsilonWord&)>& visit);

// ---------------------------------------------------------------------------
// Generating polynomials
// ---------------------------------------------------------------------------

/// Sum over all pair partitions of [2n] of q^cross t^nest.
BivarPoly joint_cross_nest_polynomial(int n, int guard = pairing_guard());

/// Sum over S_n of q^inv t^coinv; equals prod_{i<=n} [i]_{q,t}.
BivarPoly perm_inv_div_polynomial(int n, int guard = permutation_guard());

}  // namespace qtfock
