#include "catgossip/tree.hpp"

#include "catgossip/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace catgossip {

namespace {

char letter_char(Letter l) {
    switch (l) {
        case Letter::a: return 'a';
        case Letter::a_inv: return 'A';
        case Letter::b: return 'b';
        case Letter::b_inv: return 'B';
    }
    return '?';
}

// Depth of a tree point split as integer vertex depth + fractional offset, so
// that differences keep the integer part exact.
struct Depth {
    long k = 0;
    double f = 0.0;
};

Depth depth_of(const TreePoint& x) {
    if (x.is_root()) return {};
    return {static_cast<long>(x.word.size()) - 1, x.lambda};
}

// (kd - ka) + (fd - fa) for a descendant d of an ancestor a.
double depth_gap(const Depth& d, const Depth& a) {
    return static_cast<double>(d.k - a.k) + (d.f - a.f);
}

// The point at depth k + g on the root path of `c`.
TreePoint point_on_path(const Word& c, long k, double g) {
    const double m = std::ceil(g);
    long n = k + static_cast<long>(m);
    double lambda = g - (m - 1.0);
    if (lambda <= 0.0) {
        n -= 1;
        lambda = 1.0;
    }
    if (lambda > 1.0) lambda = 1.0;
    if (n <= 0) return TreePoint::root();
    n = std::min<long>(n, static_cast<long>(c.size()));
    return {c.prefix(static_cast<std::size_t>(n)), lambda};
}

// True when `anc` lies on the path from the root to `x`.
bool is_ancestor(const TreePoint& anc, const TreePoint& x) {
    if (anc.is_root()) return true;
    if (anc.word.size() > x.word.size()) return false;
    if (common_prefix_length(anc.word, x.word) != anc.word.size()) return false;
    if (anc.word.size() == x.word.size()) return anc.lambda <= x.lambda;
    return true;
}

bool deeper_or_equal(const TreePoint& x, const TreePoint& y) {
    const Depth dx = depth_of(x);
    const Depth dy = depth_of(y);
    return dx.k > dy.k || (dx.k == dy.k && dx.f >= dy.f);
}

}  // namespace

Word Word::parse(const std::string& text) {
    if (text == "e" || text.empty()) return {};
    std::vector<Letter> letters;
    letters.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
            case 'a': letters.push_back(Letter::a); break;
            case 'A': letters.push_back(Letter::a_inv); break;
            case 'b': letters.push_back(Letter::b); break;
            case 'B': letters.push_back(Letter::b_inv); break;
            default: throw DomainError(std::string("Word::parse: unexpected character '") + ch + "'");
        }
    }
    return Word(std::move(letters));
}

Word Word::reduced(std::span<const Letter> letters) {
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (Letter l : letters) {
        if (!out.empty() && out.back() == inverse(l)) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return Word(std::move(out));
}

bool Word::is_reduced() const {
    for (std::size_t i = 1; i < letters_.size(); ++i) {
        if (letters_[i] == inverse(letters_[i - 1])) return false;
    }
    return true;
}

Word Word::prefix(std::size_t n) const {
    n = std::min(n, letters_.size());
    return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Word Word::concat(const Word& other) const {
    std::vector<Letter> out = letters_;
    out.insert(out.end(), other.letters_.begin(), other.letters_.end());
    return Word(std::move(out));
}

Word Word::inverted() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(inverse(*it));
    return Word(std::move(out));
}

std::string Word::to_string() const {
    if (letters_.empty()) return "e";
    std::string s;
    s.reserve(letters_.size());
    for (Letter l : letters_) s.push_back(letter_char(l));
    return s;
}

Word reduce(const Word& w) { return Word::reduced(w.letters()); }

std::size_t common_prefix_length(const Word& x, const Word& y) {
    const std::size_t n = std::min(x.size(), y.size());
    std::size_t i = 0;
    while (i < n && x[i] == y[i]) ++i;
    return i;
}

double TreePoint::depth() const {
    const Depth d = depth_of(*this);
    return static_cast<double>(d.k) + d.f;
}

std::string TreePoint::to_string() const {
    if (is_root()) return "((e,e),0)";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", lambda);
    return "((" + word.prefix(word.size() - 1).to_string() + "," + word.to_string() + ")," + buf + ")";
}

void validate_tree_point(const TreePoint& x) {
    if (!x.word.is_reduced()) throw DomainError("tree point: word " + x.word.to_string() + " is not reduced");
    if (x.is_root()) {
        if (x.lambda != 0.0) throw DomainError("tree point: root must carry lambda = 0");
        return;
    }
    if (!(x.lambda > 0.0 && x.lambda <= 1.0)) throw DomainError("tree point: lambda outside (0,1]");
}

TreeGeodesicDecomposition tree_decompose(const TreePoint& x1, const TreePoint& x2) {
    const Depth d1 = depth_of(x1);
    const Depth d2 = depth_of(x2);

    if (is_ancestor(x2, x1) && (!is_ancestor(x1, x2) || deeper_or_equal(x1, x2))) {
        return {x2, depth_gap(d1, d2), 0.0};
    }
    if (is_ancestor(x1, x2)) {
        return {x1, 0.0, depth_gap(d2, d1)};
    }
    const std::size_t p = common_prefix_length(x1.word, x2.word);
    const Depth dz{static_cast<long>(p), 0.0};
    TreePoint junction = p == 0 ? TreePoint::root() : TreePoint{x1.word.prefix(p), 1.0};
    return {std::move(junction), depth_gap(d1, dz), depth_gap(d2, dz)};
}

double tree_distance(const TreePoint& x1, const TreePoint& x2) {
    const auto dec = tree_decompose(x1, x2);
    return dec.leg1 + dec.leg2;
}

TreePoint tree_geodesic_point(const TreePoint& x1, const TreePoint& x2, double t) {
    if (t <= 0.0) return x1;
    if (t >= 1.0) return x2;
    const auto dec = tree_decompose(x1, x2);
    const double d = dec.leg1 + dec.leg2;
    if (d < 1e-12) return x1;
    const double s = t * d;

    if (s <= dec.leg1) {
        // Climb from x1 towards the junction.
        const Depth d1 = depth_of(x1);
        return point_on_path(x1.word, d1.k, d1.f - s);
    }
    // Descend from the junction towards x2.
    const Depth dz = depth_of(dec.junction);
    TreePoint m = point_on_path(x2.word, dz.k, dz.f + (s - dec.leg1));
    if (deeper_or_equal(m, x2)) return x2;
    return m;
}

}  // namespace catgossip
