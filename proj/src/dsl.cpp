#include "hopfcert/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace hopfcert {

namespace {

std::string kind_name(DslErrorKind k) {
  switch (k) {
    case DslErrorKind::Lex: return "lex";
    case DslErrorKind::Syntax: return "syntax";
    case DslErrorKind::Semantic: return "semantic";
  }
  return "?";
}

std::string format_dsl_error(DslErrorKind kind, const std::string& message, int line,
                             int col, const std::string& file) {
  std::ostringstream os;
  os << (file.empty() ? std::string("<input>") : file) << ":" << line << ":" << col
     << ": " << kind_name(kind) << " error: " << message;
  return os.str();
}

[[noreturn]] void fail(DslErrorKind k, const std::string& msg, int line, int col,
                       const std::string& file) {
  throw DslError(k, msg, line, col, file);
}

// ----------------------------------------------------------------- lexing --

enum class Tok {
  Ident, Int, Plus, Minus, Star, Caret, Slash, LParen, RParen,
  Tensor, Arrow, Comma, Lt, Eq, Pipe, End
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 0, col = 0;
};

// Lexes one line fragment; text[i] sits at column col0 + i (1-based columns).
std::vector<Token> lex(const std::string& text, int line, int col0,
                       const std::string& file) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r') { ++i; continue; }
    int tc = col0 + static_cast<int>(i);
    if (c == '(' && i + 2 < text.size() && text[i + 1] == 'x' && text[i + 2] == ')') {
      out.push_back({Tok::Tensor, "(x)", line, tc});
      i += 3;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, text.substr(i, j - i), line, tc});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::Int, text.substr(i, j - i), line, tc});
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", line, tc});
      i += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '^': k = Tok::Caret; break;
      case '/': k = Tok::Slash; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case '<': k = Tok::Lt; break;
      case '=': k = Tok::Eq; break;
      case '|': k = Tok::Pipe; break;
      default:
        fail(DslErrorKind::Lex, std::string("unexpected character '") + c + "'", line,
             tc, file);
    }
    out.push_back({k, std::string(1, c), line, tc});
    ++i;
  }
  return out;
}

// A fragment of one physical line: its number and the column of text[0].
struct Chunk {
  int line = 0;
  int col0 = 1;
  std::string text;
};

std::vector<Token> lex_chunks(const std::vector<Chunk>& chunks, const std::string& file) {
  std::vector<Token> all;
  for (const auto& ch : chunks) {
    auto toks = lex(ch.text, ch.line, ch.col0, file);
    all.insert(all.end(), toks.begin(), toks.end());
  }
  return all;
}

// Splits a token run at depth-0 occurrences of `sep` (parens track depth).
std::vector<std::vector<Token>> split_depth0(const std::vector<Token>& toks, Tok sep) {
  std::vector<std::vector<Token>> out(1);
  int depth = 0;
  for (const auto& t : toks) {
    if (t.kind == Tok::LParen) ++depth;
    if (t.kind == Tok::RParen) --depth;
    if (depth == 0 && t.kind == sep) {
      out.emplace_back();
      continue;
    }
    out.back().push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------- parsing --

struct Env {
  CtxPtr ctx;
  const std::vector<std::pair<std::string, Scalar>>* params = nullptr;

  std::optional<Scalar> param(const std::string& n) const {
    if (params) {
      for (const auto& [k, v] : *params)
        if (k == n) return v;
    }
    return std::nullopt;
  }
};

struct TensorSummand {
  Scalar coeff;
  std::vector<NCPoly> legs;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, int fallback_line, const std::string& file)
      : toks_(std::move(toks)), file_(file) {
    if (toks_.empty()) {
      end_ = Token{Tok::End, "", fallback_line, 1};
    } else {
      const Token& b = toks_.back();
      end_ = Token{Tok::End, "", b.line, b.col + static_cast<int>(b.text.size())};
    }
  }

  bool at_end() const { return pos_ >= toks_.size(); }
  const Token& peek() const { return at_end() ? end_ : toks_[pos_]; }
  Token eat() {
    Token t = peek();
    if (!at_end()) ++pos_;
    return t;
  }
  [[noreturn]] void err(DslErrorKind k, const std::string& m) const {
    const Token& t = peek();
    fail(k, m, t.line, t.col, file_);
  }
  Token expect(Tok k, const std::string& what) {
    if (peek().kind != k) err(DslErrorKind::Syntax, "expected " + what);
    return eat();
  }
  void expect_end() {
    if (!at_end()) err(DslErrorKind::Syntax, "unexpected trailing tokens");
  }

  long parse_long(const Token& t) const {
    try {
      return std::stol(t.text);
    } catch (const std::exception&) {
      fail(DslErrorKind::Semantic, "integer literal out of range", t.line, t.col, file_);
    }
  }

  Scalar parse_scalar_den(const Env& env) {
    Token t = peek();
    Scalar s = Scalar::zero(env.ctx->field);
    if (t.kind == Tok::Int) {
      eat();
      s = Scalar::of_int(env.ctx->field, parse_long(t));
    } else if (t.kind == Tok::Ident) {
      eat();
      auto p = env.param(t.text);
      if (!p)
        fail(DslErrorKind::Semantic,
             "denominator must be an integer or a parameter", t.line, t.col, file_);
      s = *p;
    } else {
      err(DslErrorKind::Syntax, "expected a scalar denominator");
    }
    if (s.is_zero())
      fail(DslErrorKind::Semantic, "division by zero", t.line, t.col, file_);
    return s;
  }

  NCPoly parse_atom(const Env& env) {
    const FieldSpec& f = env.ctx->field;
    Token t = peek();
    if (t.kind == Tok::Int) {
      eat();
      Scalar s = Scalar::of_int(f, parse_long(t));
      if (peek().kind == Tok::Slash) {
        eat();
        s = s * parse_scalar_den(env).inverse();
      }
      return NCPoly::constant(env.ctx, s);
    }
    if (t.kind == Tok::Ident) {
      eat();
      if (auto gid = env.ctx->alphabet.find(t.text)) {
        if (peek().kind == Tok::Slash)
          fail(DslErrorKind::Semantic, "division applies to scalars only",
               peek().line, peek().col, file_);
        return NCPoly::gen(env.ctx, *gid);
      }
      if (auto p = env.param(t.text)) {
        Scalar s = *p;
        if (peek().kind == Tok::Slash) {
          eat();
          s = s * parse_scalar_den(env).inverse();
        }
        return NCPoly::constant(env.ctx, s);
      }
      fail(DslErrorKind::Semantic, "unknown identifier '" + t.text + "'", t.line,
           t.col, file_);
    }
    if (t.kind == Tok::LParen) {
      eat();
      NCPoly p = parse_poly(env);
      expect(Tok::RParen, "')'");
      return p;
    }
    err(DslErrorKind::Syntax, "expected an integer, an identifier, or '('");
  }

  NCPoly parse_factor(const Env& env) {
    NCPoly p = parse_atom(env);
    if (peek().kind == Tok::Caret) {
      eat();
      Token e = expect(Tok::Int, "an integer exponent");
      long n = parse_long(e);
      if (n > 64)
        fail(DslErrorKind::Semantic, "exponent exceeds 64", e.line, e.col, file_);
      NCPoly r = NCPoly::one(env.ctx);
      for (long i = 0; i < n; ++i) r = r * p;
      p = r;
    }
    return p;
  }

  NCPoly parse_term(const Env& env) {
    NCPoly p = parse_factor(env);
    while (peek().kind == Tok::Star) {
      eat();
      p = p * parse_factor(env);
    }
    return p;
  }

  NCPoly parse_poly(const Env& env) {
    bool neg = false;
    if (peek().kind == Tok::Minus) {
      eat();
      neg = true;
    }
    NCPoly acc = parse_term(env);
    if (neg) acc = acc.scaled(Scalar::of_int(env.ctx->field, -1));
    for (;;) {
      if (peek().kind == Tok::Plus) {
        eat();
        acc = acc + parse_term(env);
      } else if (peek().kind == Tok::Minus) {
        eat();
        acc = acc - parse_term(env);
      } else {
        return acc;
      }
    }
  }

  // Tensor expression with one environment per leg; summands must carry
  // exactly envs.size() legs.
  std::vector<TensorSummand> parse_tensor(const std::vector<Env>& envs) {
    std::vector<TensorSummand> out;
    const FieldSpec& f = envs[0].ctx->field;
    bool neg = false;
    if (peek().kind == Tok::Minus) {
      eat();
      neg = true;
    }
    for (;;) {
      TensorSummand s{Scalar::of_int(f, neg ? -1 : 1), {}};
      s.legs.push_back(parse_term(envs[0]));
      std::size_t li = 1;
      while (peek().kind == Tok::Tensor) {
        Token sep = eat();
        if (li >= envs.size())
          fail(DslErrorKind::Semantic,
               "too many tensor legs (expected " + std::to_string(envs.size()) + ")",
               sep.line, sep.col, file_);
        s.legs.push_back(parse_term(envs[li]));
        ++li;
      }
      if (s.legs.size() != envs.size())
        err(DslErrorKind::Semantic,
            "expected " + std::to_string(envs.size()) + " tensor legs, got " +
                std::to_string(s.legs.size()));
      out.push_back(std::move(s));
      if (peek().kind == Tok::Plus) {
        eat();
        neg = false;
        continue;
      }
      if (peek().kind == Tok::Minus) {
        eat();
        neg = true;
        continue;
      }
      return out;
    }
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::string file_;
  Token end_;
};

// ------------------------------------------------------------- file shape --

struct Section {
  std::string keyword;
  int line = 0;
  std::vector<Chunk> chunks;
};

struct FileShape {
  std::vector<Token> header;
  int header_line = 1;
  std::vector<Section> sections;
};

std::string strip_comment(const std::string& s) {
  auto pos = s.find('#');
  return pos == std::string::npos ? s : s.substr(0, pos);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string trimmed(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// `keyword :` at line start introduces a section; returns keyword and the
// index just past the colon.
std::optional<std::pair<std::string, std::size_t>> match_section_header(
    const std::string& s) {
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  std::size_t start = i;
  if (i >= s.size() ||
      !(std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_'))
    return std::nullopt;
  while (i < s.size() &&
         (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
    ++i;
  std::size_t end_ident = i;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  if (i >= s.size() || s[i] != ':') return std::nullopt;
  return std::make_pair(s.substr(start, end_ident - start), i + 1);
}

FileShape split_file(const std::string& text, const std::string& file) {
  FileShape shape;
  bool seen_header = false;
  int cur = -1;
  int ln = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++ln;
    std::string content = strip_comment(raw);
    if (blank(content)) continue;
    if (!seen_header) {
      shape.header = lex(content, ln, 1, file);
      shape.header_line = ln;
      seen_header = true;
      continue;
    }
    if (auto m = match_section_header(content)) {
      shape.sections.push_back(Section{m->first, ln, {}});
      cur = static_cast<int>(shape.sections.size()) - 1;
      std::string rest = content.substr(m->second);
      if (!blank(rest))
        shape.sections[cur].chunks.push_back(
            Chunk{ln, static_cast<int>(m->second) + 1, rest});
      continue;
    }
    if (cur < 0) {
      std::size_t i = 0;
      while (i < content.size() &&
             std::isspace(static_cast<unsigned char>(content[i])))
        ++i;
      fail(DslErrorKind::Syntax, "expected a section header", ln,
           static_cast<int>(i) + 1, file);
    }
    shape.sections[cur].chunks.push_back(Chunk{ln, 1, content});
  }
  if (!seen_header) fail(DslErrorKind::Syntax, "empty file", 1, 1, file);
  return shape;
}

// -------------------------------------------------------------- utilities --

bool is_prime_u32(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

FieldSpec parse_field(const Token& t, const std::string& file) {
  if (t.text == "Q") return FieldSpec::rationals();
  if (t.text.size() >= 2 && t.text[0] == 'F' &&
      std::all_of(t.text.begin() + 1, t.text.end(),
                  [](unsigned char c) { return std::isdigit(c) != 0; })) {
    std::uint64_t p = 0;
    for (std::size_t i = 1; i < t.text.size(); ++i) {
      p = p * 10 + static_cast<std::uint64_t>(t.text[i] - '0');
      if (p >= (1ull << 31))
        fail(DslErrorKind::Semantic, "characteristic must be below 2^31", t.line,
             t.col, file);
    }
    if (!is_prime_u32(p))
      fail(DslErrorKind::Semantic, "characteristic must be prime", t.line, t.col,
           file);
    return FieldSpec::prime_field(static_cast<std::uint32_t>(p));
  }
  fail(DslErrorKind::Syntax, "field must be Q or F<p>", t.line, t.col, file);
}

std::vector<std::string> parse_name_list(const Section& sec, const std::string& file) {
  std::vector<std::string> names;
  auto toks = lex_chunks(sec.chunks, file);
  for (const auto& span : split_depth0(toks, Tok::Comma)) {
    if (span.empty()) continue;
    Parser p(span, sec.line, file);
    Token t = p.expect(Tok::Ident, "a name");
    p.expect_end();
    names.push_back(t.text);
  }
  return names;
}

class SectionIndex {
 public:
  SectionIndex(const FileShape& shape, const std::set<std::string>& known,
               bool allow_matrix_sections, const std::string& file)
      : file_(file) {
    for (const auto& s : shape.sections) {
      bool matrix = allow_matrix_sections && s.keyword.size() >= 2 &&
                    s.keyword[0] == 'd' &&
                    std::all_of(s.keyword.begin() + 1, s.keyword.end(),
                                [](unsigned char c) { return std::isdigit(c) != 0; });
      if (!known.count(s.keyword) && !matrix)
        fail(DslErrorKind::Syntax, "unknown section '" + s.keyword + "'", s.line, 1,
             file_);
      by_kw_[s.keyword].push_back(&s);
      if (matrix) matrix_sections_.push_back(&s);
    }
  }

  const Section* unique(const std::string& kw) const {
    auto it = by_kw_.find(kw);
    if (it == by_kw_.end()) return nullptr;
    if (it->second.size() > 1)
      fail(DslErrorKind::Syntax, "duplicate section '" + kw + "'",
           it->second[1]->line, 1, file_);
    return it->second[0];
  }

  std::vector<const Section*> all(const std::string& kw) const {
    auto it = by_kw_.find(kw);
    return it == by_kw_.end() ? std::vector<const Section*>{} : it->second;
  }

  const std::vector<const Section*>& matrix_sections() const {
    return matrix_sections_;
  }

 private:
  std::map<std::string, std::vector<const Section*>> by_kw_;
  std::vector<const Section*> matrix_sections_;
  std::string file_;
};

// Parses `gen -> value` entry lines of a block section; hands each entry's
// value parser to `consume`.
void parse_map_entries(const Section& sec, const std::string& file,
                       const std::function<void(const Token&, Parser&)>& consume) {
  for (const auto& ch : sec.chunks) {
    Parser p(lex(ch.text, ch.line, ch.col0, file), ch.line, file);
    Token gen = p.expect(Tok::Ident, "a generator name");
    p.expect(Tok::Arrow, "'->'");
    consume(gen, p);
    p.expect_end();
  }
}

}  // namespace

DslError::DslError(DslErrorKind k, const std::string& msg, int l, int c,
                   const std::string& f)
    : EngineError(format_dsl_error(k, msg, l, c, f)),
      kind(k),
      line(l),
      col(c),
      file(f),
      message(msg) {}

std::vector<NCPoly> AlgebraFile::all_relations() const {
  std::vector<NCPoly> out;
  for (auto [a, b] : inverse_pairs) {
    NCPoly ga = NCPoly::gen(ctx, a), gb = NCPoly::gen(ctx, b);
    out.push_back(ga * gb - NCPoly::one(ctx));
    if (a != b) out.push_back(gb * ga - NCPoly::one(ctx));
  }
  out.insert(out.end(), relations.begin(), relations.end());
  return out;
}

HopfPtr AlgebraFile::to_presentation() const {
  try {
    return HopfPresentation::build(name, ctx, all_relations(), maps, cap);
  } catch (const DslError&) {
    throw;
  } catch (const Refusal&) {
    throw;
  } catch (const EngineError& e) {
    throw DslError(DslErrorKind::Semantic, e.what(), 1, 1,
                   source_path.empty() ? name : source_path);
  }
}

AlgebraFile parse_algebra_text(const std::string& text, const std::string& filename) {
  FileShape shape = split_file(text, filename);

  Parser hp(shape.header, shape.header_line, filename);
  Token kw = hp.expect(Tok::Ident, "'algebra'");
  if (kw.text != "algebra")
    fail(DslErrorKind::Syntax, "expected 'algebra'", kw.line, kw.col, filename);
  Token nm = hp.expect(Tok::Ident, "an algebra name");
  Token ov = hp.expect(Tok::Ident, "'over'");
  if (ov.text != "over")
    fail(DslErrorKind::Syntax, "expected 'over'", ov.line, ov.col, filename);
  Token fd = hp.expect(Tok::Ident, "a field (Q or F<p>)");
  FieldSpec field = parse_field(fd, filename);
  hp.expect_end();

  static const std::set<std::string> known = {
      "gens",     "inverses",   "precedence", "params", "cap",
      "rels",     "comul",      "counit",     "antipode", "antipode_inv",
      "resolution", "ranks",    "covars",     "covar_rels", "coact"};
  SectionIndex idx(shape, known, /*allow_matrix_sections=*/true, filename);

  AlgebraFile out;
  out.name = nm.text;
  out.field = field;
  out.source_path = filename;

  // --- generators ----------------------------------------------------------
  const Section* gsec = idx.unique("gens");
  if (!gsec)
    fail(DslErrorKind::Semantic, "missing required section 'gens'",
         shape.header_line, 1, filename);
  std::vector<std::string> gen_names = parse_name_list(*gsec, filename);
  if (gen_names.empty())
    fail(DslErrorKind::Semantic, "need at least one generator", gsec->line, 1,
         filename);
  {
    std::set<std::string> seen;
    for (const auto& n : gen_names)
      if (!seen.insert(n).second)
        fail(DslErrorKind::Semantic, "duplicate generator '" + n + "'", gsec->line, 1,
             filename);
  }
  auto gen_index = [&](const std::string& n) -> std::optional<GenId> {
    for (std::size_t i = 0; i < gen_names.size(); ++i)
      if (gen_names[i] == n) return static_cast<GenId>(i);
    return std::nullopt;
  };

  // --- precedence ----------------------------------------------------------
  if (const Section* psec = idx.unique("precedence")) {
    std::vector<std::string> order;
    Parser p(lex_chunks(psec->chunks, filename), psec->line, filename);
    order.push_back(p.expect(Tok::Ident, "a generator name").text);
    while (p.peek().kind == Tok::Lt) {
      p.eat();
      order.push_back(p.expect(Tok::Ident, "a generator name").text);
    }
    p.expect_end();
    std::set<std::string> seen;
    for (const auto& n : order) {
      if (!gen_index(n))
        fail(DslErrorKind::Semantic, "unknown generator '" + n + "' in precedence",
             psec->line, 1, filename);
      if (!seen.insert(n).second)
        fail(DslErrorKind::Semantic, "duplicate generator '" + n + "' in precedence",
             psec->line, 1, filename);
    }
    if (order.size() != gen_names.size())
      fail(DslErrorKind::Semantic, "precedence must list every generator exactly once",
           psec->line, 1, filename);
    out.precedence = order;
  }

  Alphabet alph(gen_names);
  if (out.precedence) alph.set_precedence(*out.precedence);
  out.ctx = std::make_shared<const FreeContext>(FreeContext{std::move(alph), field});

  // --- inverse pairs -------------------------------------------------------
  if (const Section* isec = idx.unique("inverses")) {
    auto toks = lex_chunks(isec->chunks, filename);
    for (const auto& span : split_depth0(toks, Tok::Comma)) {
      if (span.empty()) continue;
      Parser p(span, isec->line, filename);
      p.expect(Tok::LParen, "'('");
      Token a = p.expect(Tok::Ident, "a generator name");
      p.expect(Tok::Comma, "','");
      Token b = p.expect(Tok::Ident, "a generator name");
      p.expect(Tok::RParen, "')'");
      p.expect_end();
      auto ai = gen_index(a.text), bi = gen_index(b.text);
      if (!ai)
        fail(DslErrorKind::Semantic, "unknown generator '" + a.text + "'", a.line,
             a.col, filename);
      if (!bi)
        fail(DslErrorKind::Semantic, "unknown generator '" + b.text + "'", b.line,
             b.col, filename);
      out.inverse_pairs.emplace_back(*ai, *bi);
    }
  }

  // --- parameters ----------------------------------------------------------
  if (const Section* psec = idx.unique("params")) {
    auto toks = lex_chunks(psec->chunks, filename);
    for (const auto& span : split_depth0(toks, Tok::Comma)) {
      if (span.empty()) continue;
      Parser p(span, psec->line, filename);
      Token nmt = p.expect(Tok::Ident, "a parameter name");
      if (gen_index(nmt.text))
        fail(DslErrorKind::Semantic,
             "parameter '" + nmt.text + "' collides with a generator", nmt.line,
             nmt.col, filename);
      for (const auto& [k, v] : out.params)
        if (k == nmt.text)
          fail(DslErrorKind::Semantic, "duplicate parameter '" + nmt.text + "'",
               nmt.line, nmt.col, filename);
      p.expect(Tok::Eq, "'='");
      bool neg = false;
      if (p.peek().kind == Tok::Minus) {
        p.eat();
        neg = true;
      }
      Token numt = p.expect(Tok::Int, "an integer");
      long num = p.parse_long(numt);
      if (neg) num = -num;
      Scalar value = Scalar::of_int(field, num);
      if (p.peek().kind == Tok::Slash) {
        p.eat();
        Token dent = p.expect(Tok::Int, "an integer denominator");
        Scalar den = Scalar::of_int(field, p.parse_long(dent));
        if (den.is_zero())
          fail(DslErrorKind::Semantic, "division by zero", dent.line, dent.col,
               filename);
        value = value * den.inverse();
      }
      p.expect_end();
      out.params.emplace_back(nmt.text, value);
    }
  }
  Env henv{out.ctx, &out.params};

  // --- cap -----------------------------------------------------------------
  if (const Section* csec = idx.unique("cap")) {
    Parser p(lex_chunks(csec->chunks, filename), csec->line, filename);
    Token t = p.expect(Tok::Int, "an integer");
    p.expect_end();
    long v = p.parse_long(t);
    if (v < 1)
      fail(DslErrorKind::Semantic, "cap must be at least 1", t.line, t.col, filename);
    out.cap = static_cast<int>(v);
  }

  // --- relations -----------------------------------------------------------
  for (const Section* rsec : idx.all("rels")) {
    for (const auto& ch : rsec->chunks) {
      auto toks = lex(ch.text, ch.line, ch.col0, filename);
      for (const auto& span : split_depth0(toks, Tok::Comma)) {
        if (span.empty()) continue;
        Parser p(span, ch.line, filename);
        out.relations.push_back(p.parse_poly(henv));
        p.expect_end();
      }
    }
  }

  // --- structure maps ------------------------------------------------------
  const std::size_t n = gen_names.size();
  auto require_section = [&](const char* kw) -> const Section* {
    const Section* s = idx.unique(kw);
    if (!s)
      fail(DslErrorKind::Semantic, std::string("missing required section '") + kw + "'",
           shape.header_line, 1, filename);
    return s;
  };

  auto collect_block = [&](const Section& sec, auto parse_value, auto& slots) {
    parse_map_entries(sec, filename, [&](const Token& g, Parser& p) {
      auto gid = gen_index(g.text);
      if (!gid)
        fail(DslErrorKind::Semantic, "unknown generator '" + g.text + "'", g.line,
             g.col, filename);
      if (slots[*gid])
        fail(DslErrorKind::Semantic, "duplicate image for '" + g.text + "'", g.line,
             g.col, filename);
      slots[*gid] = parse_value(g, p);
    });
    for (std::size_t i = 0; i < n; ++i)
      if (!slots[i])
        fail(DslErrorKind::Semantic,
             "missing image for generator '" + gen_names[i] + "'", sec.line, 1,
             filename);
  };

  {
    std::vector<std::optional<TensorPoly>> slots(n);
    collect_block(*require_section("comul"),
                  [&](const Token&, Parser& p) {
                    auto summands = p.parse_tensor({henv, henv});
                    TensorPoly acc = TensorPoly::zero(out.ctx, 2);
                    for (const auto& s : summands)
                      acc = acc + TensorPoly::outer(TensorPoly::from_poly(s.legs[0]),
                                                    TensorPoly::from_poly(s.legs[1]))
                                      .scaled(s.coeff);
                    return acc;
                  },
                  slots);
    for (auto& s : slots) out.maps.comul.push_back(std::move(*s));
  }
  {
    std::vector<std::optional<Scalar>> slots(n);
    collect_block(*require_section("counit"),
                  [&](const Token& g, Parser& p) {
                    NCPoly v = p.parse_poly(henv);
                    for (const auto& t : v.terms())
                      if (!t.word.is_empty())
                        fail(DslErrorKind::Semantic,
                             "counit image must be a constant scalar", g.line, g.col,
                             filename);
                    return v.is_zero() ? Scalar::zero(field) : v.terms()[0].coeff;
                  },
                  slots);
    for (auto& s : slots) out.maps.counit.push_back(std::move(*s));
  }
  {
    std::vector<std::optional<NCPoly>> slots(n);
    collect_block(*require_section("antipode"),
                  [&](const Token&, Parser& p) { return p.parse_poly(henv); }, slots);
    for (auto& s : slots) out.maps.antipode.push_back(std::move(*s));
  }
  if (const Section* ssec = idx.unique("antipode_inv")) {
    std::vector<std::optional<NCPoly>> slots(n);
    collect_block(*ssec, [&](const Token&, Parser& p) { return p.parse_poly(henv); },
                  slots);
    out.maps.antipode_inv.emplace();
    for (auto& s : slots) out.maps.antipode_inv->push_back(std::move(*s));
  }

  // --- resolution ----------------------------------------------------------
  const Section* rsec = idx.unique("resolution");
  const Section* ranks_sec = idx.unique("ranks");
  std::map<int, const Section*> dsecs;
  for (const Section* m : idx.matrix_sections()) {
    int q = 0;
    for (std::size_t i = 1; i < m->keyword.size(); ++i)
      q = q * 10 + (m->keyword[i] - '0');
    if (dsecs.count(q))
      fail(DslErrorKind::Syntax, "duplicate section '" + m->keyword + "'", m->line, 1,
           filename);
    dsecs[q] = m;
  }
  if (!rsec) {
    if (ranks_sec)
      fail(DslErrorKind::Semantic, "'ranks' requires a 'resolution' section",
           ranks_sec->line, 1, filename);
    if (!dsecs.empty())
      fail(DslErrorKind::Semantic, "matrix sections require a 'resolution' section",
           dsecs.begin()->second->line, 1, filename);
  } else {
    ParsedResolution res;
    {
      Parser p(lex_chunks(rsec->chunks, filename), rsec->line, filename);
      Token side = p.expect(Tok::Ident, "'left' or 'right'");
      p.expect_end();
      if (side.text == "left")
        res.side = ModuleSide::Left;
      else if (side.text == "right")
        res.side = ModuleSide::Right;
      else
        fail(DslErrorKind::Syntax, "resolution side must be 'left' or 'right'",
             side.line, side.col, filename);
    }
    if (!ranks_sec)
      fail(DslErrorKind::Semantic, "resolution requires a 'ranks' section", rsec->line,
           1, filename);
    {
      auto toks = lex_chunks(ranks_sec->chunks, filename);
      for (const auto& span : split_depth0(toks, Tok::Comma)) {
        if (span.empty()) continue;
        Parser p(span, ranks_sec->line, filename);
        Token t = p.expect(Tok::Int, "a rank");
        p.expect_end();
        long v = p.parse_long(t);
        if (v < 1)
          fail(DslErrorKind::Semantic, "ranks must be positive", t.line, t.col,
               filename);
        res.ranks.push_back(static_cast<int>(v));
      }
      if (res.ranks.empty())
        fail(DslErrorKind::Semantic, "ranks must be nonempty", ranks_sec->line, 1,
             filename);
    }
    for (const auto& [q, sec] : dsecs)
      if (q < 1 || q >= static_cast<int>(res.ranks.size()))
        fail(DslErrorKind::Semantic,
             "unexpected section 'd" + std::to_string(q) + "' for these ranks",
             sec->line, 1, filename);
    for (int q = 1; q < static_cast<int>(res.ranks.size()); ++q) {
      auto it = dsecs.find(q);
      if (it == dsecs.end())
        fail(DslErrorKind::Semantic, "missing section 'd" + std::to_string(q) + "'",
             rsec->line, 1, filename);
      std::vector<std::vector<NCPoly>> rows;
      for (const auto& ch : it->second->chunks) {
        auto toks = lex(ch.text, ch.line, ch.col0, filename);
        for (const auto& rowspan : split_depth0(toks, Tok::Pipe)) {
          if (rowspan.empty()) continue;
          std::vector<NCPoly> row;
          for (const auto& span : split_depth0(rowspan, Tok::Comma)) {
            if (span.empty()) continue;
            Parser p(span, ch.line, filename);
            row.push_back(p.parse_poly(henv));
            p.expect_end();
          }
          rows.push_back(std::move(row));
        }
      }
      if (static_cast<int>(rows.size()) != res.ranks[q - 1])
        fail(DslErrorKind::Semantic,
             "matrix d" + std::to_string(q) + " needs " +
                 std::to_string(res.ranks[q - 1]) + " rows, got " +
                 std::to_string(rows.size()),
             it->second->line, 1, filename);
      for (const auto& row : rows)
        if (static_cast<int>(row.size()) != res.ranks[q])
          fail(DslErrorKind::Semantic,
               "matrix d" + std::to_string(q) + " needs " +
                   std::to_string(res.ranks[q]) + " entries per row",
               it->second->line, 1, filename);
      res.maps.push_back(std::move(rows));
    }
    out.resolution = std::move(res);
  }

  // --- coaction ------------------------------------------------------------
  const Section* cvs = idx.unique("covars");
  const Section* coact_sec = idx.unique("coact");
  auto covar_rel_secs = idx.all("covar_rels");
  if (!cvs) {
    if (coact_sec)
      fail(DslErrorKind::Semantic, "'coact' requires a 'covars' section",
           coact_sec->line, 1, filename);
    if (!covar_rel_secs.empty())
      fail(DslErrorKind::Semantic, "'covar_rels' requires a 'covars' section",
           covar_rel_secs[0]->line, 1, filename);
  } else {
    std::vector<std::string> cnames = parse_name_list(*cvs, filename);
    if (cnames.empty())
      fail(DslErrorKind::Semantic, "need at least one covariable", cvs->line, 1,
           filename);
    std::set<std::string> seen;
    for (const auto& nme : cnames) {
      if (!seen.insert(nme).second)
        fail(DslErrorKind::Semantic, "duplicate covariable '" + nme + "'", cvs->line,
             1, filename);
      if (gen_index(nme))
        fail(DslErrorKind::Semantic,
             "covariable '" + nme + "' collides with a generator", cvs->line, 1,
             filename);
    }
    CoactionSpec spec;
    spec.covar_ctx = make_context(cnames, field);
    spec.cap = out.cap;
    Env cenv{spec.covar_ctx, &out.params};
    for (const Section* sec : covar_rel_secs) {
      for (const auto& ch : sec->chunks) {
        auto toks = lex(ch.text, ch.line, ch.col0, filename);
        for (const auto& span : split_depth0(toks, Tok::Comma)) {
          if (span.empty()) continue;
          Parser p(span, ch.line, filename);
          spec.covar_relations.push_back(p.parse_poly(cenv));
          p.expect_end();
        }
      }
    }
    if (!coact_sec)
      fail(DslErrorKind::Semantic, "covariables require a 'coact' section", cvs->line,
           1, filename);
    std::vector<std::optional<std::vector<std::pair<Word, NCPoly>>>> slots(
        cnames.size());
    parse_map_entries(*coact_sec, filename, [&](const Token& g, Parser& p) {
      auto gid = spec.covar_ctx->alphabet.find(g.text);
      if (!gid)
        fail(DslErrorKind::Semantic, "unknown covariable '" + g.text + "'", g.line,
             g.col, filename);
      if (slots[*gid])
        fail(DslErrorKind::Semantic, "duplicate coaction image for '" + g.text + "'",
             g.line, g.col, filename);
      auto summands = p.parse_tensor({cenv, henv});
      std::map<Word, NCPoly> acc;
      for (const auto& s : summands) {
        for (const auto& term : s.legs[0].terms()) {
          NCPoly h = s.legs[1].scaled(term.coeff * s.coeff);
          auto it = acc.find(term.word);
          if (it == acc.end())
            acc.emplace(term.word, std::move(h));
          else
            it->second = it->second + h;
        }
      }
      std::vector<std::pair<Word, NCPoly>> entries;
      for (auto& [w, h] : acc)
        if (!h.is_zero()) entries.emplace_back(w, std::move(h));
      slots[*gid] = std::move(entries);
    });
    for (std::size_t i = 0; i < cnames.size(); ++i)
      if (!slots[i])
        fail(DslErrorKind::Semantic,
             "missing coaction image for covariable '" + cnames[i] + "'",
             coact_sec->line, 1, filename);
    for (auto& s : slots) spec.rho.push_back(std::move(*s));
    out.coaction = std::move(spec);
  }

  return out;
}

AlgebraFile parse_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(DslErrorKind::Semantic, "cannot open file", 1, 1, path);
  std::stringstream ss;
  ss << in.rdbuf();
  AlgebraFile f = parse_algebra_text(ss.str(), path);
  f.source_path = path;
  return f;
}

namespace {

template <typename T, typename F>
std::string join(const std::vector<T>& xs, const std::string& sep, F render) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += render(xs[i]);
  }
  return out;
}

}  // namespace

std::string serialize_algebra(const AlgebraFile& f) {
  std::ostringstream os;
  const Alphabet& alph = f.ctx->alphabet;
  std::vector<std::string> names;
  for (GenId g = 0; g < static_cast<GenId>(alph.size()); ++g)
    names.push_back(alph.symbol(g).name);

  os << "algebra " << f.name << " over " << f.field.to_string() << "\n";
  os << "gens: " << join(names, ", ", [](const std::string& s) { return s; }) << "\n";
  if (!f.inverse_pairs.empty())
    os << "inverses: "
       << join(f.inverse_pairs, ", ",
               [&](const std::pair<GenId, GenId>& pr) {
                 return "(" + names[pr.first] + ", " + names[pr.second] + ")";
               })
       << "\n";
  if (f.precedence)
    os << "precedence: "
       << join(*f.precedence, " < ", [](const std::string& s) { return s; }) << "\n";
  if (!f.params.empty())
    os << "params: "
       << join(f.params, ", ",
               [](const std::pair<std::string, Scalar>& pv) {
                 return pv.first + " = " + pv.second.to_string();
               })
       << "\n";
  os << "cap: " << f.cap << "\n";
  if (!f.relations.empty()) {
    os << "rels:\n";
    for (const auto& r : f.relations) os << "  " << r.to_string() << "\n";
  }
  os << "comul:\n";
  for (GenId g = 0; g < static_cast<GenId>(alph.size()); ++g)
    os << "  " << names[g] << " -> " << f.maps.comul[g].to_string() << "\n";
  os << "counit:\n";
  for (GenId g = 0; g < static_cast<GenId>(alph.size()); ++g)
    os << "  " << names[g] << " -> " << f.maps.counit[g].to_string() << "\n";
  os << "antipode:\n";
  for (GenId g = 0; g < static_cast<GenId>(alph.size()); ++g)
    os << "  " << names[g] << " -> " << f.maps.antipode[g].to_string() << "\n";
  if (f.maps.antipode_inv) {
    os << "antipode_inv:\n";
    for (GenId g = 0; g < static_cast<GenId>(alph.size()); ++g)
      os << "  " << names[g] << " -> " << (*f.maps.antipode_inv)[g].to_string() << "\n";
  }
  if (f.resolution) {
    const ParsedResolution& r = *f.resolution;
    os << "resolution: " << (r.side == ModuleSide::Left ? "left" : "right") << "\n";
    os << "ranks: "
       << join(r.ranks, ", ", [](int v) { return std::to_string(v); }) << "\n";
    for (std::size_t q = 0; q < r.maps.size(); ++q) {
      os << "d" << (q + 1) << ":\n";
      for (const auto& row : r.maps[q])
        os << "  "
           << join(row, ", ", [](const NCPoly& p) { return p.to_string(); }) << "\n";
    }
  }
  if (f.coaction) {
    const CoactionSpec& c = *f.coaction;
    const Alphabet& calph = c.covar_ctx->alphabet;
    std::vector<std::string> cnames;
    for (GenId g = 0; g < static_cast<GenId>(calph.size()); ++g)
      cnames.push_back(calph.symbol(g).name);
    os << "covars: " << join(cnames, ", ", [](const std::string& s) { return s; })
       << "\n";
    if (!c.covar_relations.empty()) {
      os << "covar_rels:\n";
      for (const auto& r : c.covar_relations) os << "  " << r.to_string() << "\n";
    }
    os << "coact:\n";
    for (GenId g = 0; g < static_cast<GenId>(calph.size()); ++g) {
      os << "  " << cnames[g] << " -> ";
      if (c.rho[g].empty()) {
        os << "0 (x) 0";
      } else {
        os << join(c.rho[g], " + ", [&](const std::pair<Word, NCPoly>& e) {
          return word_to_string(e.first, calph) + " (x) (" + e.second.to_string() +
                 ")";
        });
      }
      os << "\n";
    }
  }
  return os.str();
}

bool structurally_equal(const AlgebraFile& a, const AlgebraFile& b) {
  if (a.name != b.name || !(a.field == b.field)) return false;
  if (!(a.ctx->alphabet == b.ctx->alphabet)) return false;
  if (a.inverse_pairs != b.inverse_pairs) return false;
  if (a.params.size() != b.params.size()) return false;
  for (std::size_t i = 0; i < a.params.size(); ++i)
    if (a.params[i].first != b.params[i].first ||
        a.params[i].second != b.params[i].second)
      return false;
  if (a.relations.size() != b.relations.size()) return false;
  for (std::size_t i = 0; i < a.relations.size(); ++i)
    if (!(a.relations[i] == b.relations[i])) return false;
  if (a.maps.comul.size() != b.maps.comul.size()) return false;
  for (std::size_t i = 0; i < a.maps.comul.size(); ++i)
    if (!(a.maps.comul[i] == b.maps.comul[i])) return false;
  if (a.maps.counit != b.maps.counit) return false;
  if (a.maps.antipode.size() != b.maps.antipode.size()) return false;
  for (std::size_t i = 0; i < a.maps.antipode.size(); ++i)
    if (!(a.maps.antipode[i] == b.maps.antipode[i])) return false;
  if (a.maps.antipode_inv.has_value() != b.maps.antipode_inv.has_value()) return false;
  if (a.maps.antipode_inv) {
    if (a.maps.antipode_inv->size() != b.maps.antipode_inv->size()) return false;
    for (std::size_t i = 0; i < a.maps.antipode_inv->size(); ++i)
      if (!((*a.maps.antipode_inv)[i] == (*b.maps.antipode_inv)[i])) return false;
  }
  if (a.cap != b.cap) return false;
  if (a.resolution.has_value() != b.resolution.has_value()) return false;
  if (a.resolution) {
    const auto& ra = *a.resolution;
    const auto& rb = *b.resolution;
    if (ra.side != rb.side || ra.ranks != rb.ranks) return false;
    if (ra.maps.size() != rb.maps.size()) return false;
    for (std::size_t q = 0; q < ra.maps.size(); ++q) {
      if (ra.maps[q].size() != rb.maps[q].size()) return false;
      for (std::size_t i = 0; i < ra.maps[q].size(); ++i) {
        if (ra.maps[q][i].size() != rb.maps[q][i].size()) return false;
        for (std::size_t j = 0; j < ra.maps[q][i].size(); ++j)
          if (!(ra.maps[q][i][j] == rb.maps[q][i][j])) return false;
      }
    }
  }
  if (a.coaction.has_value() != b.coaction.has_value()) return false;
  if (a.coaction) {
    const auto& ca = *a.coaction;
    const auto& cb = *b.coaction;
    if (!(ca.covar_ctx->alphabet == cb.covar_ctx->alphabet)) return false;
    if (ca.cap != cb.cap) return false;
    if (ca.covar_relations.size() != cb.covar_relations.size()) return false;
    for (std::size_t i = 0; i < ca.covar_relations.size(); ++i)
      if (!(ca.covar_relations[i] == cb.covar_relations[i])) return false;
    if (ca.rho.size() != cb.rho.size()) return false;
    for (std::size_t g = 0; g < ca.rho.size(); ++g) {
      if (ca.rho[g].size() != cb.rho[g].size()) return false;
      for (std::size_t i = 0; i < ca.rho[g].size(); ++i)
        if (!(ca.rho[g][i].first == cb.rho[g][i].first) ||
            !(ca.rho[g][i].second == cb.rho[g][i].second))
          return false;
    }
  }
  return true;
}

SequenceFileData parse_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(DslErrorKind::Semantic, "cannot open file", 1, 1, path);
  std::stringstream ss;
  ss << in.rdbuf();
  FileShape shape = split_file(ss.str(), path);

  Parser hp(shape.header, shape.header_line, path);
  Token kw = hp.expect(Tok::Ident, "'sequence'");
  if (kw.text != "sequence")
    fail(DslErrorKind::Syntax, "expected 'sequence'", kw.line, kw.col, path);
  Token nm = hp.expect(Tok::Ident, "a sequence name");
  hp.expect_end();

  static const std::set<std::string> known = {"B", "A", "H", "i", "p", "witness"};
  SectionIndex idx(shape, known, /*allow_matrix_sections=*/false, path);

  SequenceFileData out;
  out.name = nm.text;
  out.source_path = path;

  auto path_section = [&](const char* kw2) -> std::string {
    const Section* s = idx.unique(kw2);
    if (!s)
      fail(DslErrorKind::Semantic, std::string("missing required section '") + kw2 + "'",
           shape.header_line, 1, path);
    if (s->chunks.size() != 1)
      fail(DslErrorKind::Syntax, "expected a single file path", s->line, 1, path);
    std::string rel = trimmed(s->chunks[0].text);
    if (rel.empty())
      fail(DslErrorKind::Syntax, "expected a file path", s->line, 1, path);
    namespace fs = std::filesystem;
    return (fs::path(path).parent_path() / rel).lexically_normal().string();
  };
  out.base_path = path_section("B");
  out.total_path = path_section("A");
  out.quotient_path = path_section("H");

  auto entry_section = [&](const char* kw2) -> std::vector<RawMapEntry> {
    const Section* s = idx.unique(kw2);
    if (!s)
      fail(DslErrorKind::Semantic, std::string("missing required section '") + kw2 + "'",
           shape.header_line, 1, path);
    std::vector<RawMapEntry> entries;
    for (const auto& ch : s->chunks) {
      Parser p(lex(ch.text, ch.line, ch.col0, path), ch.line, path);
      Token gen = p.expect(Tok::Ident, "a generator name");
      p.expect(Tok::Arrow, "'->'");
      if (p.at_end()) p.err(DslErrorKind::Syntax, "expected an expression");
      Token first = p.peek();
      entries.push_back(RawMapEntry{
          gen.text, ch.text.substr(static_cast<std::size_t>(first.col - ch.col0)),
          ch.line, first.col});
    }
    return entries;
  };
  out.incl_entries = entry_section("i");
  out.proj_entries = entry_section("p");

  const Section* wsec = idx.unique("witness");
  if (!wsec)
    fail(DslErrorKind::Semantic, "missing required section 'witness'",
         shape.header_line, 1, path);
  out.witness_names = parse_name_list(*wsec, path);
  return out;
}

LoadedSequence load_sequence(const std::string& path) {
  SequenceFileData d = parse_sequence_file(path);
  AlgebraFile bf = parse_algebra_file(d.base_path);
  AlgebraFile af = parse_algebra_file(d.total_path);
  AlgebraFile hf = parse_algebra_file(d.quotient_path);
  HopfPtr B = bf.to_presentation();
  HopfPtr A = af.to_presentation();
  HopfPtr H = hf.to_presentation();

  auto build_images = [&](const std::vector<RawMapEntry>& entries,
                          const AlgebraFile& srcf, const AlgebraFile& tgtf,
                          const char* which) {
    const Alphabet& salph = srcf.ctx->alphabet;
    std::vector<std::optional<NCPoly>> images(salph.size());
    Env env{tgtf.ctx, &tgtf.params};
    for (const auto& e : entries) {
      auto gid = salph.find(e.gen);
      if (!gid)
        fail(DslErrorKind::Semantic,
             "unknown generator '" + e.gen + "' in section '" + which + "'", e.line, 1,
             path);
      if (images[*gid])
        fail(DslErrorKind::Semantic, "duplicate image for '" + e.gen + "'", e.line, 1,
             path);
      Parser p(lex(e.expr, e.line, e.col, path), e.line, path);
      images[*gid] = p.parse_poly(env);
      p.expect_end();
    }
    std::vector<NCPoly> out;
    for (GenId g = 0; g < static_cast<GenId>(salph.size()); ++g) {
      if (!images[g])
        fail(DslErrorKind::Semantic,
             "missing image for generator '" + salph.symbol(g).name +
                 "' in section '" + which + "'",
             1, 1, path);
      out.push_back(std::move(*images[g]));
    }
    return out;
  };

  std::vector<NCPoly> incl_images = build_images(d.incl_entries, bf, af, "i");
  std::vector<NCPoly> proj_images = build_images(d.proj_entries, af, hf, "p");

  auto guard = [&](auto fn, int line) {
    try {
      return fn();
    } catch (const DslError&) {
      throw;
    } catch (const Refusal&) {
      throw;
    } catch (const EngineError& e) {
      throw DslError(DslErrorKind::Semantic, e.what(), line, 1, path);
    }
  };

  int i_line = d.incl_entries.empty() ? 1 : d.incl_entries[0].line;
  int p_line = d.proj_entries.empty() ? 1 : d.proj_entries[0].line;
  HopfMorphism incl = guard(
      [&] { return HopfMorphism::build("i", B, A, std::move(incl_images)); }, i_line);
  HopfMorphism proj = guard(
      [&] { return HopfMorphism::build("p", A, H, std::move(proj_images)); }, p_line);

  std::vector<GenId> wit;
  for (const auto& nme : d.witness_names) {
    auto gid = af.ctx->alphabet.find(nme);
    if (!gid)
      fail(DslErrorKind::Semantic, "unknown witness generator '" + nme + "'", 1, 1,
           path);
    wit.push_back(*gid);
  }
  SequenceSpec spec = guard(
      [&] {
        return SequenceSpec::build(d.name, B, A, H, std::move(incl), std::move(proj),
                                   std::move(wit));
      },
      1);
  return LoadedSequence{std::move(bf), std::move(af), std::move(hf), std::move(spec)};
}

}  // namespace hopfcert
