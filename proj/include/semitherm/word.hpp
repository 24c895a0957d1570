#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace semitherm {

// Finite word over the alphabet {0..k-1}. Letters are stored zero-based;
// the text form is one-based ("1221" is the word 0,1,1,0).
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

  static Word parse(std::string_view text);
  static Word repeat(int letter, std::size_t count);
  // First `length` letters of the periodic word www...
  static Word periodic(const Word& w, std::size_t length);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<int>& letters() const { return letters_; }

  // [w]_n: the first n letters.
  Word prefix(std::size_t n) const;
  // _n[w]: the last n letters.
  Word suffix(std::size_t n) const;
  // theta^n applied to the word: drop the first n letters.
  Word drop(std::size_t n) const;
  Word concat(const Word& other) const;

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<int> letters_;
};

inline Word operator+(const Word& a, const Word& b) { return a.concat(b); }

}  // namespace semitherm
