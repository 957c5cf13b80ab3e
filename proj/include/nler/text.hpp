#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace nler {

struct SentenceRecord {
  std::string cluster_id;
  std::string doc_id;
  std::size_t position = 0; // index within the document
  std::string text;
  std::vector<std::string> tokens; // lowercase, before stopword removal
  std::size_t word_count = 0;      // token count before stopword removal
};

struct Document {
  std::string id;
  std::vector<SentenceRecord> sentences;
};

struct Cluster {
  std::string id;
  std::vector<Document> documents;
  std::vector<std::string> gold_summaries;

  std::size_t sentence_count() const {
    std::size_t n = 0;
    for (const auto& doc : documents) n += doc.sentences.size();
    return n;
  }
};

namespace detail {

inline bool ascii_alnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool ascii_digit(char c) { return c >= '0' && c <= '9'; }

inline bool ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }

inline char ascii_lower(char c) { return ascii_upper(c) ? static_cast<char>(c + 32) : c; }

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

} // namespace detail

// Lowercase tokens split on any non-alphanumeric run; numerals are kept.
// Operates on bytes, so arbitrary input stays deterministic.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (detail::ascii_alnum(c)) {
      current += detail::ascii_lower(c);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

inline bool is_numeral_token(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token)
    if (!detail::ascii_digit(c)) return false;
  return true;
}

// Fixed embedded English stopword list; applied for tf-isf and centroid
// features only, never for word counts.
inline const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> words = {
      "a", "about", "above", "after", "again", "against", "all", "almost", "also", "although",
      "always", "am", "among", "an", "and", "another", "any", "are", "around", "as", "at",
      "back", "be", "became", "because", "been", "before", "being", "below", "between", "both",
      "but", "by", "came", "can", "cannot", "come", "could", "d", "did", "do", "does", "doing",
      "down", "during", "each", "either", "else", "ever", "every", "few", "for", "from",
      "further", "had", "has", "have", "having", "he", "her", "here", "hers", "herself", "him",
      "himself", "his", "how", "however", "i", "if", "in", "into", "is", "it", "its", "itself",
      "just", "ll", "m", "may", "me", "might", "more", "most", "much", "must", "my", "myself",
      "never", "no", "nor", "not", "now", "of", "off", "on", "once", "only", "or", "other",
      "our", "ours", "ourselves", "out", "over", "own", "re", "s", "same", "she", "should",
      "since", "so", "some", "still", "such", "t", "than", "that", "the", "their", "theirs",
      "them", "themselves", "then", "there", "these", "they", "this", "those", "through",
      "thus", "to", "too", "under", "until", "up", "upon", "us", "ve", "very", "via", "was",
      "we", "were", "what", "when", "where", "which", "while", "who", "whom", "why", "will",
      "with", "within", "without", "would", "yet", "you", "your", "yours", "yourself",
      "yourselves"};
  return words;
}

inline bool is_stopword(const std::string& token) { return stopwords().count(token) > 0; }

namespace detail {

// Abbreviations whose trailing period never ends a sentence.
inline const std::array<std::string_view, 7>& abbreviation_guards() {
  static const std::array<std::string_view, 7> guards = {"Mr.",  "Mrs.", "Dr.", "U.S.",
                                                         "e.g.", "i.e.", "etc."};
  return guards;
}

inline bool guarded_abbreviation(std::string_view text, std::size_t period) {
  for (std::string_view g : abbreviation_guards()) {
    if (period + 1 < g.size()) continue;
    std::size_t start = period + 1 - g.size();
    if (text.substr(start, g.size()) != g) continue;
    if (start == 0 || !ascii_alnum(text[start - 1])) return true;
  }
  return false;
}

inline std::string normalize_whitespace(std::string_view text) {
  std::string out;
  bool in_space = true; // drop leading whitespace
  for (char c : text) {
    if (is_space(c)) {
      in_space = true;
    } else {
      if (in_space && !out.empty()) out += ' ';
      out += c;
      in_space = false;
    }
  }
  return out;
}

} // namespace detail

// Splits on '.', '?', '!' followed by whitespace and a capital letter, or by
// end of text; a fixed abbreviation guard list suppresses splits. Segments
// are whitespace-normalized and empty ones dropped.
inline std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    std::string s = detail::normalize_whitespace(text.substr(start, end - start));
    if (!s.empty()) sentences.push_back(std::move(s));
    start = end;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '?' && c != '!') continue;
    std::size_t j = i + 1;
    while (j < text.size() && detail::is_space(text[j])) ++j;
    bool at_end = j >= text.size();
    bool boundary = at_end || (j > i + 1 && detail::ascii_upper(text[j]));
    if (!boundary) continue;
    if (c == '.' && !at_end && detail::guarded_abbreviation(text, i)) continue;
    flush(i + 1);
  }
  flush(text.size());
  return sentences;
}

// Drops SGML-ish angle-bracket tags, replacing each with a space so adjacent
// text does not fuse.
inline std::string strip_markup(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool in_tag = false;
  for (char c : text) {
    if (in_tag) {
      if (c == '>') in_tag = false;
    } else if (c == '<') {
      in_tag = true;
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

inline std::string normalize_newlines(std::string text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r' && i + 1 < text.size() && text[i + 1] == '\n') continue;
    out += text[i] == '\r' ? '\n' : text[i];
  }
  return out;
}

} // namespace nler
