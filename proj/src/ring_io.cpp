#include "fusion/ring_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <vector>

namespace fusion {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
            message),
      line_(line),
      column_(column) {}

AxiomFailure::AxiomFailure(const std::string& what, AxiomReport report)
    : Error(what), report_(std::move(report)) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t pos = 0;
    while (pos < raw.size()) {
      while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
      const std::size_t begin = pos;
      while (pos < raw.size() && !std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
      if (pos > begin) line.tokens.push_back({raw.substr(begin, pos - begin), begin + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::size_t to_number(const Line& line, const Token& tok) {
  std::size_t value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line.number, tok.column,
                     "expected a nonnegative integer, found '" + std::string(tok.text) + "'");
  }
  return value;
}

// Reads `key=<n>` from a token.
std::size_t keyed_number(const Line& line, std::size_t at, std::string_view key) {
  if (at >= line.tokens.size()) {
    throw ParseError(line.number, 1, "missing '" + std::string(key) + "=' field");
  }
  const Token& tok = line.tokens[at];
  const std::string prefix = std::string(key) + "=";
  if (!tok.text.starts_with(prefix)) {
    throw ParseError(line.number, tok.column,
                     "expected '" + prefix + "<n>', found '" + std::string(tok.text) + "'");
  }
  const Token value{tok.text.substr(prefix.size()), tok.column + prefix.size()};
  return to_number(line, value);
}

void expect_keyword(const Line& line, std::string_view keyword) {
  if (line.tokens.front().text != keyword) {
    throw ParseError(line.number, line.tokens.front().column,
                     "expected '" + std::string(keyword) + "', found '" +
                         std::string(line.tokens.front().text) + "'");
  }
}

void expect_count(const Line& line, std::size_t first, std::size_t want, std::string_view what) {
  const std::size_t have = line.tokens.size() - first;
  if (have != want) {
    const std::size_t column = have > want ? line.tokens[first + want].column
                                           : line.tokens.back().column;
    throw ParseError(line.number, column,
                     std::string(what) + " has " + std::to_string(have) + " entries, expected " +
                         std::to_string(want));
  }
}

std::vector<std::size_t> numbers_from(const Line& line, std::size_t first) {
  std::vector<std::size_t> out;
  for (std::size_t t = first; t < line.tokens.size(); ++t) {
    out.push_back(to_number(line, line.tokens[t]));
  }
  return out;
}

std::size_t end_line(const std::vector<Line>& lines) {
  return lines.empty() ? 1 : lines.back().number;
}

class Cursor {
 public:
  explicit Cursor(const std::vector<Line>& lines) : lines_(lines) {}

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  const Line& next(std::string_view expecting) {
    if (done()) {
      throw ParseError(end_line(lines_) + 1, 1,
                       "unexpected end of document, expected '" + std::string(expecting) + "'");
    }
    return lines_[pos_++];
  }

 private:
  const std::vector<Line>& lines_;
  std::size_t pos_ = 0;
};

FiniteGroup read_group(Cursor& cursor) {
  const Line& header = cursor.next("group");
  expect_keyword(header, "group");
  expect_count(header, 1, 2, "group header");
  const std::size_t order = keyed_number(header, 1, "order");
  const std::size_t identity = keyed_number(header, 2, "identity");
  if (order == 0) throw ParseError(header.number, header.tokens[1].column, "group order is zero");
  if (identity >= order) {
    throw ParseError(header.number, header.tokens[2].column, "identity out of range");
  }
  std::vector<std::vector<Element>> table;
  for (std::size_t a = 0; a < order; ++a) {
    const Line& row = cursor.next("row");
    expect_keyword(row, "row");
    expect_count(row, 1, order, "group row");
    auto values = numbers_from(row, 1);
    for (std::size_t b = 0; b < order; ++b) {
      if (values[b] >= order) {
        throw ParseError(row.number, row.tokens[b + 1].column, "group element out of range");
      }
    }
    table.push_back(std::move(values));
  }
  try {
    return FiniteGroup(std::move(table), identity);
  } catch (const StructuralError& e) {
    throw ParseError(header.number, 1, std::string("invalid group table: ") + e.what());
  }
}

}  // namespace

RingDocument parse_ring(std::string_view text, bool validate) {
  const auto lines = tokenize(text);
  Cursor cursor(lines);

  const Line& header = cursor.next("ring");
  expect_keyword(header, "ring");
  expect_count(header, 1, 3, "ring header");
  const std::string name(header.tokens[1].text);
  const std::size_t rank = keyed_number(header, 2, "rank");
  const std::size_t unit = keyed_number(header, 3, "unit");
  if (rank == 0) throw ParseError(header.number, header.tokens[2].column, "rank must be positive");
  if (unit >= rank) throw ParseError(header.number, header.tokens[3].column, "unit out of range");

  const Line& dual_line = cursor.next("dual");
  expect_keyword(dual_line, "dual");
  expect_count(dual_line, 1, rank, "dual line");
  const auto dual = numbers_from(dual_line, 1);
  for (std::size_t i = 0; i < rank; ++i) {
    if (dual[i] >= rank) {
      throw ParseError(dual_line.number, dual_line.tokens[i + 1].column, "dual index out of range");
    }
  }

  std::vector<Count> constants(rank * rank * rank, 0);
  std::vector<bool> seen(rank * rank, false);
  for (std::size_t row = 0; row < rank * rank; ++row) {
    const Line& line = cursor.next("N");
    expect_keyword(line, "N");
    if (line.tokens.size() < 4 || line.tokens[3].text != ":") {
      throw ParseError(line.number, line.tokens.back().column, "expected 'N <i> <j> : ...'");
    }
    const std::size_t i = to_number(line, line.tokens[1]);
    const std::size_t j = to_number(line, line.tokens[2]);
    if (i >= rank) throw ParseError(line.number, line.tokens[1].column, "row index out of range");
    if (j >= rank) throw ParseError(line.number, line.tokens[2].column, "column index out of range");
    if (seen[i * rank + j]) {
      throw ParseError(line.number, line.tokens[1].column,
                       "duplicate entry for (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    seen[i * rank + j] = true;
    expect_count(line, 4, rank, "structure constant row");
    const auto values = numbers_from(line, 4);
    std::copy(values.begin(), values.end(), constants.begin() + (i * rank + j) * rank);
  }

  RingDocument doc{FusionRing(name, rank, unit, dual, std::move(constants)), std::nullopt};

  if (!cursor.done()) {
    FiniteGroup group = read_group(cursor);
    const Line& deg_line = cursor.next("deg");
    expect_keyword(deg_line, "deg");
    expect_count(deg_line, 1, rank, "degree line");
    auto degree = numbers_from(deg_line, 1);
    for (std::size_t i = 0; i < rank; ++i) {
      if (degree[i] >= group.order()) {
        throw ParseError(deg_line.number, deg_line.tokens[i + 1].column, "degree out of range");
      }
    }
    doc.grading = Grading{std::move(group), std::move(degree)};
  }
  if (!cursor.done()) {
    const Line& extra = cursor.peek();
    throw ParseError(extra.number, extra.tokens.front().column,
                     "unexpected '" + std::string(extra.tokens.front().text) + "'");
  }

  if (validate) {
    AxiomReport report = validate_ring(doc.ring);
    if (!report.passed()) {
      const std::string what = "ring '" + name + "' violates " + report.violations.front().axiom;
      throw AxiomFailure(what, std::move(report));
    }
    if (doc.grading) {
      AxiomReport grading_report = validate_grading(doc.ring, *doc.grading);
      if (!grading_report.passed()) {
        const std::string what =
            "grading of '" + name + "' violates " + grading_report.violations.front().axiom;
        throw AxiomFailure(what, std::move(grading_report));
      }
    }
  }
  return doc;
}

FiniteGroup parse_group(std::string_view text) {
  const auto lines = tokenize(text);
  Cursor cursor(lines);
  FiniteGroup group = read_group(cursor);
  if (!cursor.done()) {
    const Line& extra = cursor.peek();
    throw ParseError(extra.number, extra.tokens.front().column,
                     "unexpected '" + std::string(extra.tokens.front().text) + "'");
  }
  return group;
}

std::string emit_group(const FiniteGroup& group) {
  std::ostringstream out;
  out << "group order=" << group.order() << " identity=" << group.identity() << "\n";
  for (const auto& row : group.table()) {
    out << "row";
    for (Element e : row) out << ' ' << e;
    out << "\n";
  }
  return out.str();
}

std::string emit_ring(const FusionRing& ring, const std::optional<Grading>& grading) {
  std::ostringstream out;
  const std::size_t r = ring.rank();
  out << "ring " << ring.name() << " rank=" << r << " unit=" << ring.unit() << "\n";
  out << "dual";
  for (Index d : ring.duals()) out << ' ' << d;
  out << "\n";
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < r; ++j) {
      out << "N " << i << ' ' << j << " :";
      for (Count c : ring.product_row(i, j)) out << ' ' << c;
      out << "\n";
    }
  }
  if (grading) {
    out << emit_group(grading->group);
    out << "deg";
    for (Element e : grading->degree) out << ' ' << e;
    out << "\n";
  }
  return out.str();
}

std::string canonical_whitespace(std::string_view text) {
  std::string out;
  for (const Line& line : tokenize(text)) {
    for (std::size_t t = 0; t < line.tokens.size(); ++t) {
      if (t > 0) out += ' ';
      out += line.tokens[t].text;
    }
    out += '\n';
  }
  return out;
}

FusionRing bundled_ring(std::string_view name) {
  const auto text = bundled_document(std::string(name) + ".ring");
  if (!text) throw PreconditionError("no bundled ring named '" + std::string(name) + "'");
  return parse_ring(*text).ring;
}

FiniteGroup bundled_group(std::string_view name) {
  const auto text = bundled_document(std::string(name) + ".group");
  if (!text) throw PreconditionError("no bundled group named '" + std::string(name) + "'");
  return parse_group(*text);
}

}  // namespace fusion
