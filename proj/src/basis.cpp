#include "kz/basis.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "kz/gso.hpp"

namespace kz {

Int dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw param_error("dot: length mismatch");
  Int acc = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    mpz_addmul(acc.get_mpz_t(), a[k].get_mpz_t(), b[k].get_mpz_t());
  return acc;
}

Int norm_sq(const IntVector& v) {
  Int acc = 0;
  for (const Int& x : v) mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), x.get_mpz_t());
  return acc;
}

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << what << " at line " << line << ", column " << col;
    throw parse_error(os.str(), line, col);
  }
};

}  // namespace

Basis parse_basis(const std::string& text) {
  Cursor c{text};
  c.skip_ws();
  if (c.eof() || c.peek() != '[') c.fail("expected '[' to open the matrix");
  c.advance();

  std::vector<IntVector> rows;
  while (true) {
    c.skip_ws();
    if (c.eof()) c.fail("unterminated matrix");
    if (c.peek() == ']') {
      c.advance();
      break;
    }
    if (c.peek() != '[') c.fail("expected '[' to open a row");
    c.advance();

    IntVector row;
    while (true) {
      c.skip_ws();
      if (c.eof()) c.fail("unterminated row");
      if (c.peek() == ']') {
        c.advance();
        break;
      }
      const int tok_line = c.line, tok_col = c.col;
      std::string tok;
      if (c.peek() == '-' || c.peek() == '+') {
        tok += c.peek();
        c.advance();
      }
      while (!c.eof() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
        tok += c.peek();
        c.advance();
      }
      if (tok.empty() || tok == "-" || tok == "+") {
        std::ostringstream os;
        os << "expected integer at line " << tok_line << ", column " << tok_col;
        throw parse_error(os.str(), tok_line, tok_col);
      }
      if (!c.eof() && c.peek() != ']' &&
          !std::isspace(static_cast<unsigned char>(c.peek()))) {
        c.fail("invalid character in integer");
      }
      row.emplace_back(tok);
    }
    if (row.empty()) c.fail("empty row");
    if (!rows.empty() && row.size() != rows.front().size()) c.fail("ragged row");
    rows.push_back(std::move(row));
  }
  c.skip_ws();
  if (!c.eof()) c.fail("trailing characters after matrix");
  if (rows.empty()) throw parse_error("empty matrix", c.line, c.col);
  if (rows.size() > rows.front().size()) c.fail("more rows than columns");
  return Basis{std::move(rows)};
}

std::string serialize_basis(const Basis& b) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < b.dim(); ++i) {
    if (i) os << '\n';
    os << '[';
    const IntVector& row = b.rows[i];
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) os << ' ';
      os << row[j];
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

double det_root(const Basis& b) {
  const GsoData gso = compute_gso(b);
  double log_sum = 0.0;
  for (double bs : gso.b_star_sq) log_sum += std::log(bs);
  return std::exp(log_sum / (2.0 * gso.dim()));
}

Basis generate_lattice(int dim, int bits, unsigned long seed) {
  if (dim < 2) throw param_error("generate_lattice: dim must be >= 2");
  if (bits < 2) throw param_error("generate_lattice: bits must be >= 2");

  gmp_randclass rng(gmp_randinit_default);
  rng.seed(seed);

  Int p = rng.get_z_bits(bits - 1);
  p += Int(1) << (bits - 1);
  p |= 1;

  Basis b;
  b.rows.assign(dim, IntVector(dim, Int(0)));
  b.rows[0][0] = p;
  for (int i = 1; i < dim; ++i) {
    b.rows[i][0] = rng.get_z_range(p);
    b.rows[i][i] = 1;
  }
  return b;
}

}  // namespace kz
