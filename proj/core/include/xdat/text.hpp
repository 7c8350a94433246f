#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace xdat {

// Returns false at the first malformed UTF-8 byte sequence.
bool valid_utf8(std::string_view data);

// Splits on Unicode whitespace (ASCII space/tab/newline plus the usual
// non-ASCII space codepoints). Non-whitespace bytes pass through untouched.
std::vector<std::string> split_whitespace(std::string_view text);

// Splits raw text into sentences on '.', '!' or '?' followed by whitespace
// or end of text. Terminators stay attached to their sentence.
std::vector<std::string> split_sentences(std::string_view text);

// ASCII lowercase; non-ASCII bytes are left as-is.
std::string to_lower(std::string_view token);

// A token counts as a word only when every character is ASCII alphanumeric.
bool is_alnum_word(std::string_view token);

// Deterministic rule-based English lemmatizer: strips one plural -s/-es,
// -ing or -ed suffix, with a small irregular noun table. Input must be
// lowercase.
std::string lemmatize_rule_based(std::string_view token);

// Bundled English stop-word list (~150 lowercase surface forms).
const std::set<std::string>& default_stopwords();

// One stop word per line; '#' starts a comment. Entries are lowercased.
std::set<std::string> load_stopwords(const std::string& path);

} // namespace xdat
