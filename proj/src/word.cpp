#include "ttlab/word.hpp"

#include <algorithm>
#include <sstream>

#include "ttlab/errors.hpp"

namespace ttlab {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty())
            throw InvalidTrack("empty edge label");
        if (!lookup_.emplace(names_[i], static_cast<int>(i)).second)
            throw InvalidTrack("duplicate label '" + names_[i] + "'");
    }
}

std::optional<int> Alphabet::find(std::string_view name) const {
    auto it = lookup_.find(std::string(name));
    if (it == lookup_.end())
        return std::nullopt;
    return it->second;
}

int Alphabet::index(std::string_view name) const {
    if (auto i = find(name))
        return *i;
    throw InvalidTrack("unknown edge label '" + std::string(name) + "'");
}

EdgeWord inverse(const EdgeWord& word) {
    EdgeWord out;
    out.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        out.push_back(it->inverse());
    return out;
}

EdgeWord reduced(const EdgeWord& word) {
    EdgeWord stack;
    stack.reserve(word.size());
    for (const auto& l : word) {
        if (!stack.empty() && stack.back() == l.inverse())
            stack.pop_back();
        else
            stack.push_back(l);
    }
    return stack;
}

bool is_reduced(const EdgeWord& word) {
    for (std::size_t i = 1; i < word.size(); ++i)
        if (word[i] == word[i - 1].inverse())
            return false;
    return true;
}

EdgeWord cyclically_reduced(const EdgeWord& word) {
    EdgeWord w = reduced(word);
    std::size_t lo = 0, hi = w.size();
    while (hi - lo >= 2 && w[lo] == w[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    return EdgeWord(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi));
}

EdgeWord substitute(const EdgeWord& word, const std::vector<EdgeWord>& images) {
    EdgeWord out;
    for (const auto& l : word) {
        const EdgeWord& img = images.at(static_cast<std::size_t>(l.edge));
        if (!l.reversed)
            out.insert(out.end(), img.begin(), img.end());
        else
            for (auto it = img.rbegin(); it != img.rend(); ++it)
                out.push_back(it->inverse());
    }
    return out;
}

std::size_t occurrences(const EdgeWord& word, int edge) {
    return static_cast<std::size_t>(
        std::count_if(word.begin(), word.end(), [edge](const SignedEdge& l) { return l.edge == edge; }));
}

std::vector<std::size_t> rotations_onto(const EdgeWord& word, const EdgeWord& target) {
    std::vector<std::size_t> out;
    const std::size_t n = word.size();
    if (n != target.size())
        return out;
    if (n == 0) {
        out.push_back(0);
        return out;
    }
    for (std::size_t r = 0; r < n; ++r) {
        bool ok = true;
        for (std::size_t t = 0; t < n && ok; ++t)
            ok = word[t] == target[(t + r) % n];
        if (ok)
            out.push_back(r);
    }
    return out;
}

bool is_rotation_of(const EdgeWord& word, const EdgeWord& target) {
    return !rotations_onto(word, target).empty();
}

EdgeWord rotated(const EdgeWord& word, std::size_t shift) {
    EdgeWord out(word.size());
    for (std::size_t t = 0; t < word.size(); ++t)
        out[t] = word[(t + shift) % word.size()];
    return out;
}

std::string format_word(const EdgeWord& word, const Alphabet& alphabet, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i)
            out += sep;
        if (word[i].reversed)
            out += '-';
        out += alphabet.name(word[i].edge);
    }
    return out;
}

EdgeWord parse_word(std::string_view text, const Alphabet& alphabet) {
    EdgeWord out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == ' ' || text[i] == '\t' || text[i] == '.') {
            ++i;
            continue;
        }
        const std::size_t start = i;
        bool reversed = false;
        if (text[i] == '-') {
            reversed = true;
            ++i;
        }
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '.')
            ++j;
        const std::string_view name = text.substr(i, j - i);
        const auto e = alphabet.find(name);
        if (!e)
            throw ParseError("unknown edge label '" + std::string(name) + "'", 1, start + 1);
        out.push_back({*e, reversed});
        i = j;
    }
    return out;
}

} // namespace ttlab
