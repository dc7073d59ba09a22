#pragma once

// Literal syntax for scalars and matrices, e.g. "3*pi^-2 + 1" or
// "[[0,1],[pi,0]]".  The uniformizer is written pi (or t).

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "dagger/matrix.hpp"

namespace dagger {

namespace detail {

template <class B>
class LiteralParser {
 public:
  LiteralParser(RingPtr<B> ring, std::string text) : ring_(std::move(ring)), text_(std::move(text)) {}

  Scalar<B> scalar() {
    auto x = expr();
    finish();
    return x;
  }

  std::vector<std::vector<Scalar<B>>> rows() {
    std::vector<std::vector<Scalar<B>>> out;
    expect('[');
    if (!accept(']')) {
      do {
        expect('[');
        std::vector<Scalar<B>> row;
        if (!accept(']')) {
          do row.push_back(expr());
          while (accept(','));
          expect(']');
        }
        out.push_back(std::move(row));
      } while (accept(','));
      expect(']');
    }
    finish();
    return out;
  }

  std::vector<Scalar<B>> list() {
    std::vector<Scalar<B>> out;
    expect('[');
    if (!accept(']')) {
      do out.push_back(expr());
      while (accept(','));
      expect(']');
    }
    finish();
    return out;
  }

 private:
  Scalar<B> expr() {
    Scalar<B> x = term();
    for (;;) {
      if (accept('+'))
        x = x + term();
      else if (accept('-'))
        x = x - term();
      else
        return x;
    }
  }

  Scalar<B> term() {
    Scalar<B> x = factor();
    for (;;) {
      if (accept('*'))
        x = x * factor();
      else if (accept('/'))
        x = x / factor();
      else
        return x;
    }
  }

  Scalar<B> factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    Scalar<B> base = atom();
    if (accept('^')) {
      bool neg = accept('-');
      auto e = integer();
      if (!e.fits_slong_p()) fail("exponent too large");
      long n = e.get_si();
      return base.pow(neg ? -n : n);
    }
    return base;
  }

  Scalar<B> atom() {
    skip();
    if (accept('(')) {
      auto x = expr();
      expect(')');
      return x;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) return from_integer(integer());
    if (keyword("pi") || keyword("t")) return Scalar<B>::pi_power(ring_, 1);
    fail("expected a number, pi or '('");
  }

  Scalar<B> from_integer(const mpz_class& n) {
    if constexpr (std::is_same_v<B, Padic>) {
      return Scalar<B>::from_shifted(ring_, 0, ring_->reduce(n, ring_->precision()), 0);
    } else {
      mpz_class r = n % static_cast<unsigned long>(ring_->prime());
      return Scalar<B>::from_int(ring_, r.get_si());
    }
  }

  mpz_class integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(text_.substr(start, pos_ - start), 10);
  }

  bool keyword(const std::string& w) {
    skip();
    if (text_.compare(pos_, w.size(), w) != 0) return false;
    std::size_t end = pos_ + w.size();
    if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) return false;
    pos_ = end;
    return true;
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  void finish() {
    skip();
    if (pos_ != text_.size()) fail("trailing characters");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput(what + " at offset " + std::to_string(pos_) + " in '" + text_ + "'");
  }

  RingPtr<B> ring_;
  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class B>
Scalar<B> parse_scalar(const RingPtr<B>& ring, const std::string& text) {
  return detail::LiteralParser<B>(ring, text).scalar();
}

template <class B>
Vector<B> parse_vector(const RingPtr<B>& ring, const std::string& text) {
  return detail::LiteralParser<B>(ring, text).list();
}

template <class B>
Matrix<B> parse_matrix(const RingPtr<B>& ring, const std::string& text) {
  auto rows = detail::LiteralParser<B>(ring, text).rows();
  if (rows.empty()) throw InvalidInput("empty matrix literal");
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw InvalidInput("ragged matrix literal");
  return Matrix<B>::from_rows(ring, rows);
}

}  // namespace dagger
