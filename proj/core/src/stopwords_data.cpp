#include "xdat/text.hpp"

namespace xdat {

namespace {

const char* kStopwords[] = {
    "a",       "about",   "above",  "after",   "again",   "against", "all",
    "am",      "an",      "and",    "any",     "are",     "as",      "at",
    "be",      "because", "been",   "before",  "being",   "below",   "between",
    "both",    "but",     "by",     "can",     "cannot",  "could",   "did",
    "do",      "does",    "doing",  "down",    "during",  "each",    "few",
    "for",     "from",    "further","had",     "has",     "have",    "having",
    "he",      "her",     "here",   "hers",    "herself", "him",     "himself",
    "his",     "how",     "i",      "if",      "in",      "into",    "is",
    "it",      "its",     "itself", "just",    "me",      "more",    "most",
    "my",      "myself",  "no",     "nor",     "not",     "now",     "of",
    "off",     "on",      "once",   "only",    "or",      "other",   "ought",
    "our",     "ours",    "ourselves", "out",  "over",    "own",     "same",
    "she",     "should",  "so",     "some",    "such",    "than",    "that",
    "the",     "their",   "theirs", "them",    "themselves", "then", "there",
    "these",   "they",    "this",   "those",   "through", "to",      "too",
    "under",   "until",   "up",     "upon",    "us",      "very",    "was",
    "we",      "were",    "what",   "when",    "where",   "which",   "while",
    "who",     "whom",    "why",    "will",    "with",    "within",  "without",
    "would",   "you",     "your",   "yours",   "yourself", "yourselves",
    "also",    "although", "among", "anyone",  "anything", "became", "become",
    "becomes", "either",  "else",   "ever",    "every",   "however", "may",
    "might",   "must",    "neither", "onto",   "per",     "shall",   "since",
    "somehow", "someone", "something", "still", "thus",   "unless",  "via",
    "whether", "yet",
};

} // namespace

const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words(std::begin(kStopwords),
                                             std::end(kStopwords));
    return words;
}

} // namespace xdat
