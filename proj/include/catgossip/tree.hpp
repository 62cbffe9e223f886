#pragma once

// The metric tree of the free group on two generators: vertices are reduced
// words over {a, a^-1, b, b^-1}, every edge w- -> w has unit length.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace catgossip {

/// Letters are encoded so that inverse(l) == l ^ 1.
enum class Letter : std::uint8_t { a = 0, a_inv = 1, b = 2, b_inv = 3 };

constexpr Letter inverse(Letter l) { return static_cast<Letter>(static_cast<std::uint8_t>(l) ^ 1U); }

/// A word over the four-letter alphabet. Construction does not reduce; use
/// `reduce` or `Word::reduced` for the free-group normal form.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    /// Parses "e" (empty) or a string over {a, A, b, B}, capitals meaning inverses.
    static Word parse(const std::string& text);
    static Word reduced(std::span<const Letter> letters);

    std::span<const Letter> letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    Letter back() const { return letters_.back(); }

    bool is_reduced() const;
    Word prefix(std::size_t n) const;
    Word concat(const Word& other) const;
    /// Group inverse: reversed word of inverted letters.
    Word inverted() const;

    /// Compact form over {a, A, b, B}; "e" for the identity.
    std::string to_string() const;

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;

private:
    std::vector<Letter> letters_;
};

/// Free reduction (cancel adjacent inverse pairs until none remain).
Word reduce(const Word& w);

std::size_t common_prefix_length(const Word& x, const Word& y);

/// A point of the metric tree, in normal form: `word` is the child endpoint
/// of the edge carrying the point and `lambda` in (0,1] the distance from the
/// parent vertex. Vertices sit at lambda = 1 on their incoming edge; the root
/// is the only point with an empty word, and has lambda = 0.
struct TreePoint {
    Word word;
    double lambda = 0.0;

    static TreePoint root() { return {}; }
    bool is_root() const { return word.empty(); }
    /// Distance from the root.
    double depth() const;

    /// "((parent, child), lambda)"
    std::string to_string() const;

    friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

struct TreeGeodesicDecomposition {
    TreePoint junction;
    double leg1 = 0.0;  // d(x1, junction)
    double leg2 = 0.0;  // d(junction, x2)
    double distance() const { return leg1 + leg2; }
};

/// Throws DomainError if the word is not reduced or lambda is out of range.
void validate_tree_point(const TreePoint& x);

TreeGeodesicDecomposition tree_decompose(const TreePoint& x1, const TreePoint& x2);
double tree_distance(const TreePoint& x1, const TreePoint& x2);
/// Point at arc length t * d(x1, x2) from x1 along the unique path.
TreePoint tree_geodesic_point(const TreePoint& x1, const TreePoint& x2, double t);

}  // namespace catgossip
