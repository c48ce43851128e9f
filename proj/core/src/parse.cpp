#include "specmat/parse.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace specmat {

namespace {

constexpr int kMaxDepth = 64;

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  int depth = 0;

  bool eof() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }

  void skip_ws() {
    while (!eof() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos));
  }

  void expect(char c) {
    skip_ws();
    if (eof() || s[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  bool consume(char c) {
    skip_ws();
    if (eof() || s[pos] != c) return false;
    ++pos;
    return true;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (!eof() && std::islower(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected a constructor name");
    return s.substr(start, pos - start);
  }

  ExtendedCount count() {
    skip_ws();
    std::size_t start = pos;
    while (!eof() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos > start) {
      std::string digits = s.substr(start, pos - start);
      if (digits.size() > 18) fail("count too large");
      return ExtendedCount(std::stoull(digits));
    }
    if (s.compare(pos, 3, "inf") == 0) {
      pos += 3;
      return ExtendedCount::infinity();
    }
    fail("expected a count (digits or inf)");
  }

  // Scalars never contain brackets or commas, so the token is the maximal
  // run of scalar characters; parse_complex validates the shape.
  CQ scalar() {
    skip_ws();
    std::size_t start = pos;
    while (!eof()) {
      char c = s[pos];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
          c == '/' || c == 'i') {
        ++pos;
      } else {
        break;
      }
    }
    auto z = parse_complex(s.substr(start, pos - start));
    if (!z) {
      pos = start;
      fail("expected a complex scalar");
    }
    return *z;
  }
};

Model parse_expr(Cursor& cur);

Model parse_diag(Cursor& cur) {
  cur.expect('{');
  std::vector<std::pair<CQ, ExtendedCount>> values;
  if (!cur.consume('}')) {
    do {
      cur.expect('(');
      CQ z = cur.scalar();
      cur.expect(',');
      ExtendedCount m = cur.count();
      cur.expect(')');
      values.emplace_back(std::move(z), m);
    } while (cur.consume(','));
    cur.expect('}');
  }
  return Model::diagonal(std::move(values));
}

Model parse_matrix(Cursor& cur) {
  cur.expect('[');
  std::vector<std::vector<CQ>> rows;
  do {
    cur.expect('[');
    std::vector<CQ> row;
    do {
      row.push_back(cur.scalar());
    } while (cur.consume(','));
    cur.expect(']');
    rows.push_back(std::move(row));
  } while (cur.consume(','));
  cur.expect(']');

  std::size_t n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n) cur.fail("matrix rows must be square");
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  return Model::finite_matrix(std::move(m));
}

Model parse_expr(Cursor& cur) {
  if (++cur.depth > kMaxDepth) cur.fail("expression nested too deeply");
  std::string head = cur.ident();
  Model out = [&]() -> Model {
    if (head == "shift") return Model::shift();
    if (head == "backshift") return Model::backshift();
    if (head == "bishift") return Model::bishift();
    if (head == "identity" || head == "zero") {
      cur.expect('(');
      ExtendedCount dim = cur.count();
      cur.expect(')');
      return head == "identity" ? Model::identity(dim) : Model::zero(dim);
    }
    if (head == "diag") return parse_diag(cur);
    if (head == "matrix") return parse_matrix(cur);
    if (head == "translate" || head == "scale") {
      cur.expect('(');
      Model inner = parse_expr(cur);
      cur.expect(',');
      CQ z = cur.scalar();
      cur.expect(')');
      return head == "translate" ? Model::translate(std::move(inner), z)
                                 : Model::scale(std::move(inner), z);
    }
    if (head == "dsum") {
      cur.expect('(');
      Model a = parse_expr(cur);
      cur.expect(',');
      Model b = parse_expr(cur);
      cur.expect(')');
      return Model::direct_sum(std::move(a), std::move(b));
    }
    if (head == "inflate") {
      cur.expect('(');
      Model inner = parse_expr(cur);
      cur.expect(')');
      return Model::inflate(std::move(inner));
    }
    if (head == "dual") {
      cur.expect('(');
      Model inner = parse_expr(cur);
      cur.expect(')');
      return inner.dual();
    }
    cur.fail("unknown constructor '" + head + "'");
  }();
  --cur.depth;
  return out;
}

}  // namespace

Model parse_model(const std::string& text) {
  Cursor cur{text};
  Model m = parse_expr(cur);
  cur.skip_ws();
  if (!cur.eof()) cur.fail("trailing input");
  return m;
}

DiagonalTuple parse_tuple_config(const std::string& text) {
  std::map<std::uint64_t, Model> slots;
  std::size_t line_no = 0;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t nl = text.find('\n', line_start);
    std::string line = text.substr(
        line_start, nl == std::string::npos ? std::string::npos : nl - line_start);
    line_start = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);

    auto here = [&](const std::string& what) -> ParseError {
      return ParseError("line " + std::to_string(line_no) + ": " + what);
    };
    if (line[0] != 'D') throw here("expected a slot definition 'Dk = EXPR'");
    std::size_t p = 1;
    while (p < line.size() && std::isdigit(static_cast<unsigned char>(line[p]))) ++p;
    if (p == 1 || p - 1 > 9) throw here("expected a slot number after 'D'");
    std::uint64_t k = std::stoull(line.substr(1, p - 1));
    if (k == 0) throw here("slots are numbered from D1");
    while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
    if (p >= line.size() || line[p] != '=') throw here("expected '=' after the slot name");
    ++p;
    if (slots.count(k)) throw here("slot D" + std::to_string(k) + " defined twice");
    try {
      slots.emplace(k, parse_model(line.substr(p)));
    } catch (const ParseError& e) {
      throw here(e.what());
    }
  }

  if (slots.size() < 2)
    throw ParseError("a tuple needs at least two slots (D1, D2, ...)");
  std::vector<Model> entries;
  for (std::uint64_t k = 1; k <= slots.size(); ++k) {
    auto it = slots.find(k);
    if (it == slots.end())
      throw ParseError("slot D" + std::to_string(k) + " is missing; slots must be contiguous from D1");
    entries.push_back(std::move(it->second));
  }
  return DiagonalTuple(std::move(entries));
}

}  // namespace specmat
