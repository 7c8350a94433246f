#include "xdat/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "xdat/common.hpp"

namespace xdat {

namespace {

// Decodes one UTF-8 codepoint at data[i]; advances i past it. Returns
// nullopt on malformed input.
std::optional<char32_t> decode_utf8(std::string_view data, std::size_t& i) {
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(data[k]); };
    const unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len;
    char32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return std::nullopt;
    }
    if (i + len > data.size()) return std::nullopt;
    for (int k = 1; k < len; ++k) {
        const unsigned char b = byte(i + k);
        if ((b & 0xC0) != 0x80) return std::nullopt;
        cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong encodings, surrogates and out-of-range values.
    static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
        return std::nullopt;
    i += len;
    return cp;
}

bool is_unicode_space(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

} // namespace

bool valid_utf8(std::string_view data) {
    std::size_t i = 0;
    while (i < data.size()) {
        if (!decode_utf8(data, i)) return false;
    }
    return true;
}

std::vector<std::string> split_whitespace(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    while (i < text.size()) {
        const std::size_t start = i;
        const auto cp = decode_utf8(text, i);
        if (!cp) {  // undecodable byte: keep it in the token
            current.push_back(text[i]);
            ++i;
            continue;
        }
        if (is_unicode_space(*cp)) {
            if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.append(text.substr(start, i - start));
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> sentences;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c != '.' && c != '!' && c != '?') continue;
        const bool at_end = i + 1 == text.size();
        const bool before_space =
            !at_end && std::isspace(static_cast<unsigned char>(text[i + 1]));
        if (at_end || before_space) {
            sentences.emplace_back(text.substr(start, i + 1 - start));
            start = i + 1;
        }
    }
    if (start < text.size()) {
        std::string_view rest = text.substr(start);
        if (rest.find_first_not_of(" \t\r\n\f\v") != std::string_view::npos)
            sentences.emplace_back(rest);
    }
    return sentences;
}

std::string to_lower(std::string_view token) {
    std::string out(token);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

bool is_alnum_word(std::string_view token) {
    if (token.empty()) return false;
    return std::all_of(token.begin(), token.end(), [](unsigned char c) {
        return std::isalnum(c) && c < 0x80;
    });
}

namespace {

// Irregular noun plurals only. Verb forms are deliberately absent: the
// suffix rules below are the whole story for verbs.
const std::pair<const char*, const char*> kIrregularNouns[] = {
    {"children", "child"}, {"feet", "foot"},   {"geese", "goose"},
    {"lives", "life"},     {"men", "man"},     {"mice", "mouse"},
    {"people", "person"},  {"teeth", "tooth"}, {"wives", "wife"},
    {"women", "woman"},
};

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() &&
           s.substr(s.size() - suffix.size()) == suffix;
}

bool is_double_consonant_tail(std::string_view s) {
    if (s.size() < 2) return false;
    const char a = s[s.size() - 2], b = s[s.size() - 1];
    if (a != b) return false;
    static const std::string_view undoubled = "bdgmnprt";
    return undoubled.find(a) != std::string_view::npos;
}

} // namespace

std::string lemmatize_rule_based(std::string_view token) {
    for (const auto& [plural, singular] : kIrregularNouns) {
        if (token == plural) return singular;
    }
    std::string w(token);
    if (ends_with(w, "sses")) {
        w.resize(w.size() - 2);
        return w;
    }
    if (ends_with(w, "ies") && w.size() > 4) {
        w.resize(w.size() - 3);
        w.push_back('y');
        return w;
    }
    if (ends_with(w, "es") && w.size() > 3) {
        const std::string_view stem(w.data(), w.size() - 2);
        if (ends_with(stem, "s") || ends_with(stem, "x") || ends_with(stem, "z") ||
            ends_with(stem, "ch") || ends_with(stem, "sh")) {
            w.resize(w.size() - 2);
            return w;
        }
    }
    if (ends_with(w, "s") && w.size() > 2 && !ends_with(w, "ss") &&
        !ends_with(w, "us") && !ends_with(w, "is")) {
        w.resize(w.size() - 1);
        return w;
    }
    if (ends_with(w, "ing") && w.size() >= 6) {
        w.resize(w.size() - 3);
        if (is_double_consonant_tail(w)) w.resize(w.size() - 1);
        return w;
    }
    if (ends_with(w, "ied") && w.size() >= 5) {
        w.resize(w.size() - 3);
        w.push_back('y');
        return w;
    }
    if (ends_with(w, "eed")) {
        if (w.size() >= 6) w.resize(w.size() - 1);
        return w;
    }
    if (ends_with(w, "ed") && w.size() >= 5) {
        w.resize(w.size() - 2);
        if (is_double_consonant_tail(w)) w.resize(w.size() - 1);
        return w;
    }
    return w;
}

std::set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open stop-word file: " + path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        for (auto& tok : split_whitespace(line)) words.insert(to_lower(tok));
    }
    return words;
}

} // namespace xdat
