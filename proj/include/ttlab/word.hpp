#ifndef TTLAB_WORD_HPP
#define TTLAB_WORD_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ttlab {

// Ordered set of edge names. Tracks produced from one another by splitting,
// relabeling or composition share the same alphabet.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(int edge) const { return names_.at(static_cast<std::size_t>(edge)); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<int> find(std::string_view name) const;
    // Throws InvalidTrack on unknown names.
    int index(std::string_view name) const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> lookup_;
};

struct SignedEdge {
    int edge = 0;
    bool reversed = false;

    SignedEdge inverse() const noexcept { return {edge, !reversed}; }
    friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
    friend auto operator<=>(const SignedEdge&, const SignedEdge&) = default;
};

using EdgeWord = std::vector<SignedEdge>;

EdgeWord inverse(const EdgeWord& word);

// Free reduction: deletes adjacent x x^-1 pairs until none remain.
EdgeWord reduced(const EdgeWord& word);
bool is_reduced(const EdgeWord& word);

// Free reduction followed by removal of cancelling first/last letters.
EdgeWord cyclically_reduced(const EdgeWord& word);

// Letterwise substitution without reduction. `images[e]` is the image of
// edge e read forward; reversed letters contribute the inverse image.
EdgeWord substitute(const EdgeWord& word, const std::vector<EdgeWord>& images);

// Unsigned number of occurrences of `edge` in `word`.
std::size_t occurrences(const EdgeWord& word, int edge);

// Every r with word[t] == target[(t + r) % n] for all t.
std::vector<std::size_t> rotations_onto(const EdgeWord& word, const EdgeWord& target);
bool is_rotation_of(const EdgeWord& word, const EdgeWord& target);

EdgeWord rotated(const EdgeWord& word, std::size_t shift);

// Plain-text form used by every file format: letters separated by spaces,
// a leading '-' marking reversed traversal ("i j -h -d").
std::string format_word(const EdgeWord& word, const Alphabet& alphabet, std::string_view sep = " ");
EdgeWord parse_word(std::string_view text, const Alphabet& alphabet);

} // namespace ttlab

#endif
