#include "semitherm/word.hpp"

#include <algorithm>

#include "semitherm/errors.hpp"

namespace semitherm {

Word Word::parse(std::string_view text) {
  std::vector<int> letters;
  letters.reserve(text.size());
  for (char c : text) {
    if (c < '1' || c > '9') {
      throw ConfigError("word letters must be digits 1-9, got '" + std::string(text) + "'");
    }
    letters.push_back(c - '1');
  }
  return Word(std::move(letters));
}

Word Word::repeat(int letter, std::size_t count) {
  return Word(std::vector<int>(count, letter));
}

Word Word::periodic(const Word& w, std::size_t length) {
  if (w.empty()) throw ConfigError("periodic extension of the empty word");
  std::vector<int> letters(length);
  for (std::size_t i = 0; i < length; ++i) letters[i] = w[i % w.size()];
  return Word(std::move(letters));
}

Word Word::prefix(std::size_t n) const {
  n = std::min(n, size());
  return Word(std::vector<int>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Word Word::suffix(std::size_t n) const {
  n = std::min(n, size());
  return Word(std::vector<int>(letters_.end() - static_cast<std::ptrdiff_t>(n), letters_.end()));
}

Word Word::drop(std::size_t n) const {
  n = std::min(n, size());
  return Word(std::vector<int>(letters_.begin() + static_cast<std::ptrdiff_t>(n), letters_.end()));
}

Word Word::concat(const Word& other) const {
  std::vector<int> letters = letters_;
  letters.insert(letters.end(), other.letters_.begin(), other.letters_.end());
  return Word(std::move(letters));
}

std::string Word::str() const {
  std::string out;
  out.reserve(size());
  for (int l : letters_) out.push_back(static_cast<char>('1' + l));
  return out;
}

}  // namespace semitherm
