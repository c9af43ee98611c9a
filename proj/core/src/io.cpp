#include "structo/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "structo/error.hpp"
#include "structo/util.hpp"

namespace structo {

namespace {

using json = nlohmann::json;

struct Line {
  std::string text;
  std::size_t number = 0;  // 1-based
  std::size_t offset = 0;  // byte offset of the line start
};

[[noreturn]] void fail_at(const Line& l, std::size_t col, const std::string& what) {
  throw parse_error(what, l.offset + col - 1, l.number, col);
}

std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::size_t start = 0, number = 1;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string s = text.substr(start, end - start);
    if (!s.empty() && s.back() == '\r') s.pop_back();
    const std::string t = trim(s);
    if (!t.empty() && t[0] != ';') out.push_back({s, number, start});
    if (end == text.size()) break;
    start = end + 1;
    ++number;
  }
  return out;
}

// "key: rest" -> key, rest and the column where rest starts.
bool split_key(const Line& l, std::string& key, std::string& rest, std::size_t& col) {
  const auto colon = l.text.find(':');
  if (colon == std::string::npos) return false;
  key = trim(l.text.substr(0, colon));
  rest = l.text.substr(colon + 1);
  col = colon + 2;
  return true;
}

Line require_key(const Line& l, std::string& key, std::string& rest, std::size_t& col) {
  if (!split_key(l, key, rest, col)) {
    std::size_t c = 1;
    while (c <= l.text.size() && std::isspace(static_cast<unsigned char>(l.text[c - 1]))) ++c;
    fail_at(l, c, "expected 'key: value'");
  }
  return l;
}

// Parenthesised tuples "(a,b) (c,d)"; items may themselves contain balanced
// parentheses or brackets.
std::vector<std::vector<std::string>> parse_tuples(const Line& l, const std::string& rest, std::size_t col0) {
  std::vector<std::vector<std::string>> out;
  std::size_t i = 0;
  auto col = [&](std::size_t k) { return col0 + k; };
  while (true) {
    while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
    if (i >= rest.size()) break;
    if (rest[i] != '(') fail_at(l, col(i), "expected '('");
    ++i;
    std::vector<std::string> items;
    std::string cur;
    int depth = 0;
    bool closed = false;
    for (; i < rest.size(); ++i) {
      const char c = rest[i];
      if ((c == '(' || c == '[')) ++depth;
      if ((c == ')' || c == ']') && depth > 0) {
        --depth;
        cur += c;
        continue;
      }
      if (depth == 0 && c == ')') {
        items.push_back(trim(cur));
        closed = true;
        ++i;
        break;
      }
      if (depth == 0 && c == ',') {
        items.push_back(trim(cur));
        cur.clear();
        continue;
      }
      cur += c;
    }
    if (!closed) fail_at(l, col(i), "unterminated tuple");
    for (const auto& it : items)
      if (it.empty()) fail_at(l, col(i - 1), "empty tuple component");
    out.push_back(std::move(items));
  }
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t off = e.byte == 0 ? 0 : e.byte - 1;
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < off && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw parse_error("malformed JSON", off, line, col);
  }
}

bool looks_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

template <class T>
T json_get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw input_error(std::string("JSON field '") + key + "' missing");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw input_error(std::string("JSON field '") + key + "' has the wrong type");
  }
}

FinER er_from_lines(const std::vector<Line>& lines, std::size_t& pos) {
  std::string key, rest;
  std::size_t col = 0;
  if (pos >= lines.size()) throw input_error("missing 'points:' line");
  require_key(lines[pos], key, rest, col);
  if (key != "points") fail_at(lines[pos], 1, "expected 'points:'");
  std::vector<Point> points = split_ws(rest);
  ++pos;
  std::vector<std::vector<Point>> blocks;
  while (pos < lines.size()) {
    if (!split_key(lines[pos], key, rest, col) || key != "class") break;
    blocks.push_back(split_ws(rest));
    ++pos;
  }
  // Points not listed in any class form singletons.
  std::set<Point> covered;
  for (const auto& b : blocks) covered.insert(b.begin(), b.end());
  for (const auto& p : points)
    if (!covered.count(p)) blocks.push_back({p});
  return FinER(std::move(points), blocks);
}

std::string er_lines(const FinER& E) {
  std::string out = "points: " + join(E.points(), " ") + "\n";
  for (const auto& cls : E.named_classes()) out += "class: " + join(cls, " ") + "\n";
  return out;
}

PointMap map_from_lines(const std::vector<Line>& lines, std::size_t& pos, const FinER& dom, const FinER& cod) {
  std::map<Point, Point> m;
  while (pos < lines.size()) {
    const Line& l = lines[pos];
    const auto arrow = l.text.find("->");
    if (arrow == std::string::npos) break;
    const std::string a = trim(l.text.substr(0, arrow));
    const std::string b = trim(l.text.substr(arrow + 2));
    if (a.empty() || b.empty()) fail_at(l, arrow + 1, "expected 'point -> point'");
    if (!dom.find(a)) fail_at(l, 1, "unknown domain point '" + a + "'");
    if (!cod.find(b)) fail_at(l, arrow + 3, "unknown codomain point '" + b + "'");
    if (!m.emplace(a, b).second) fail_at(l, 1, "point '" + a + "' mapped twice");
    ++pos;
  }
  for (const auto& p : dom.points())
    if (!m.count(p)) throw input_error("map leaves '" + p + "' unassigned");
  return PointMap::from_names(dom, cod, m);
}

std::string map_lines(const PointMap& f) {
  std::string out;
  for (std::size_t i = 0; i < f.domain().size(); ++i)
    out += f.domain().point(i) + " -> " + f.codomain().point(f(i)) + "\n";
  return out;
}

Language language_from(const Line& l, const std::string& rest, std::size_t col) {
  std::vector<Symbol> syms;
  std::size_t i = 0;
  for (const auto& tok : split_ws(rest)) {
    const auto at = rest.find(tok, i);
    i = at + tok.size();
    const auto slash = tok.rfind('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == tok.size())
      fail_at(l, col + at, "expected NAME/ARITY");
    std::size_t arity = 0;
    for (std::size_t k = slash + 1; k < tok.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(tok[k]))) fail_at(l, col + at + k, "arity must be a number");
      arity = arity * 10 + static_cast<std::size_t>(tok[k] - '0');
    }
    syms.push_back({tok.substr(0, slash), arity});
  }
  return Language(std::move(syms));
}

// Splits "[name]" sections; lines before the first header go to "".
std::map<std::string, std::vector<Line>> sections(const std::vector<Line>& lines) {
  std::map<std::string, std::vector<Line>> out;
  std::string cur;
  for (const auto& l : lines) {
    const std::string t = trim(l.text);
    if (t.size() >= 2 && t.front() == '[' && t.back() == ']') {
      cur = t.substr(1, t.size() - 2);
      if (out.count(cur)) fail_at(l, 1, "repeated section [" + cur + "]");
      out[cur];
      continue;
    }
    out[cur].push_back(l);
  }
  return out;
}

Theory theory_from_lines(const std::vector<Line>& lines) {
  std::string key, rest;
  std::size_t col = 0;
  if (lines.empty()) throw input_error("missing 'language:' line");
  require_key(lines[0], key, rest, col);
  if (key != "language") fail_at(lines[0], 1, "expected 'language:'");
  Language L = language_from(lines[0], rest, col);
  if (lines.size() < 2) throw input_error("missing 'sentence:' line");
  require_key(lines[1], key, rest, col);
  if (key != "sentence") fail_at(lines[1], 1, "expected 'sentence:'");
  std::string body = rest;
  for (std::size_t i = 2; i < lines.size(); ++i) body += "\n" + lines[i].text;
  Formula f;
  try {
    f = parse_formula(body);
  } catch (const parse_error& e) {
    // Re-anchor the position to the file.
    std::size_t line = lines[1].number + e.line() - 1;
    std::size_t c = e.line() == 1 ? col + e.column() - 1 : e.column();
    throw parse_error(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at ")),
                      lines[1].offset + col - 1 + e.offset(), line, c);
  }
  return Theory(std::move(L), std::move(f));
}

}  // namespace

// ---------------------------------------------------------------- relations

FinER parse_er(const std::string& text) {
  if (looks_json(text)) {
    const json j = parse_json(text);
    auto pts = json_get<std::vector<std::string>>(j, "points");
    auto cls = json_get<std::vector<std::vector<std::string>>>(j, "classes");
    return FinER(std::move(pts), cls);
  }
  const auto lines = content_lines(text);
  std::size_t pos = 0;
  FinER E = er_from_lines(lines, pos);
  if (pos < lines.size()) fail_at(lines[pos], 1, "unexpected line");
  return E;
}

std::string format_er(const FinER& E) { return er_lines(E); }

PointMap parse_map(const std::string& text, const FinER& domain, const FinER& codomain) {
  if (looks_json(text)) {
    const json j = parse_json(text);
    const auto m = json_get<std::map<std::string, std::string>>(j, "map");
    for (const auto& p : domain.points())
      if (!m.count(p)) throw input_error("map leaves '" + p + "' unassigned");
    return PointMap::from_names(domain, codomain, m);
  }
  const auto lines = content_lines(text);
  std::size_t pos = 0;
  PointMap f = map_from_lines(lines, pos, domain, codomain);
  if (pos < lines.size()) fail_at(lines[pos], 1, "expected 'point -> point'");
  return f;
}

std::string format_map(const PointMap& f) { return map_lines(f); }

// ---------------------------------------------------------------- structures

Language parse_language(const std::string& text) {
  const Line l{text, 1, 0};
  return language_from(l, text, 1);
}

FinStructure parse_structure(const std::string& text) {
  if (looks_json(text)) {
    const json j = parse_json(text);
    std::vector<Symbol> syms;
    for (const auto& s : json_get<json>(j, "language"))
      syms.push_back({json_get<std::string>(s, "name"), json_get<std::size_t>(s, "arity")});
    FinStructure A(Language(syms), json_get<std::vector<std::string>>(j, "universe"));
    const json rel = j.contains("relations") ? j.at("relations") : json::object();
    for (auto it = rel.begin(); it != rel.end(); ++it)
      for (const auto& t : it.value()) A.add(it.key(), t.get<std::vector<std::string>>());
    return A;
  }
  const auto lines = content_lines(text);
  std::string key, rest;
  std::size_t col = 0;
  if (lines.size() < 2) throw input_error("structure needs 'language:' and 'universe:' lines");
  require_key(lines[0], key, rest, col);
  if (key != "language") fail_at(lines[0], 1, "expected 'language:'");
  Language L = language_from(lines[0], rest, col);
  require_key(lines[1], key, rest, col);
  if (key != "universe") fail_at(lines[1], 1, "expected 'universe:'");
  FinStructure A(L, split_ws(rest));
  for (std::size_t i = 2; i < lines.size(); ++i) {
    require_key(lines[i], key, rest, col);
    if (!L.find(key)) fail_at(lines[i], 1, "unknown symbol '" + key + "'");
    const std::size_t ar = L[L.index(key)].arity;
    for (const auto& t : parse_tuples(lines[i], rest, col)) {
      if (t.size() != ar) fail_at(lines[i], col, "tuple arity differs from " + key + "/" + std::to_string(ar));
      for (const auto& p : t)
        if (!A.find(p)) fail_at(lines[i], col, "unknown point '" + p + "'");
      A.add(key, t);
    }
  }
  return A;
}

std::string format_structure(const FinStructure& A) {
  std::string out = "language: " + A.language().to_string() + "\n";
  out += "universe: " + join(A.universe(), " ") + "\n";
  for (std::size_t s = 0; s < A.language().size(); ++s) {
    out += A.language()[s].name + ":";
    for (const auto& t : A.tuples(s)) {
      std::vector<std::string> names;
      for (std::size_t i : t) names.push_back(A.universe()[i]);
      out += " " + tuple_name(names);
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------- theories

Theory parse_theory(const std::string& text) { return theory_from_lines(content_lines(text)); }

std::string format_theory(const Theory& T) { return T.to_string(); }

Interpretation parse_interpretation(const std::string& text) {
  const auto secs = sections(content_lines(text));
  for (const char* s : {"source", "target", "assign"})
    if (!secs.count(s)) throw input_error(std::string("missing section [") + s + "]");
  const auto& src = secs.at("source");
  if (src.size() != 1) throw input_error("[source] holds exactly one 'language:' line");
  std::string key, rest;
  std::size_t col = 0;
  require_key(src[0], key, rest, col);
  if (key != "language") fail_at(src[0], 1, "expected 'language:'");
  Language source = language_from(src[0], rest, col);
  Theory target = theory_from_lines(secs.at("target"));
  std::map<std::string, Formula> assign;
  for (const auto& l : secs.at("assign")) {
    const auto eq = l.text.find(":=");
    if (eq == std::string::npos) fail_at(l, 1, "expected 'SYMBOL := formula'");
    const std::string sym = trim(l.text.substr(0, eq));
    try {
      assign[sym] = parse_formula(l.text.substr(eq + 2));
    } catch (const parse_error& e) {
      fail_at(l, eq + 2 + e.column(), std::string(e.what()).substr(0, std::string(e.what()).rfind(" at ")));
    }
  }
  return Interpretation(std::move(source), std::move(target), std::move(assign));
}

std::string format_interpretation(const Interpretation& a) {
  std::string out = "[source]\nlanguage: " + a.source.to_string() + "\n[target]\n" + a.target.to_string() + "[assign]\n";
  for (const auto& s : a.source.symbols()) out += s.name + " := " + print(a[s.name]) + "\n";
  return out;
}

// ---------------------------------------------------------------- fibers

FiberSpace parse_fiber_space(const std::string& text) {
  const auto secs = sections(content_lines(text));
  for (const char* s : {"total", "base", "projection"})
    if (!secs.count(s)) throw input_error(std::string("missing section [") + s + "]");
  std::size_t pos = 0;
  FinER total = er_from_lines(secs.at("total"), pos);
  if (pos < secs.at("total").size()) fail_at(secs.at("total")[pos], 1, "unexpected line");
  pos = 0;
  FinER base = er_from_lines(secs.at("base"), pos);
  if (pos < secs.at("base").size()) fail_at(secs.at("base")[pos], 1, "unexpected line");
  pos = 0;
  PointMap p = map_from_lines(secs.at("projection"), pos, total, base);
  if (pos < secs.at("projection").size()) fail_at(secs.at("projection")[pos], 1, "expected 'point -> point'");
  return FiberSpace(std::move(total), std::move(base), std::move(p));
}

std::string format_fiber_space(const FiberSpace& S) {
  return "[total]\n" + er_lines(S.total) + "[base]\n" + er_lines(S.base) + "[projection]\n" + map_lines(S.p);
}

Cocycle parse_cocycle(const std::string& text) {
  const auto lines = content_lines(text);
  std::size_t pos = 0;
  Cocycle c;
  c.base = er_from_lines(lines, pos);
  const std::size_t n = c.base.size();
  std::vector<std::optional<std::size_t>> sizes(n);
  std::string key, rest;
  std::size_t col = 0;
  for (; pos < lines.size(); ++pos) {
    const Line& l = lines[pos];
    require_key(l, key, rest, col);
    if (key == "fiber") {
      const auto toks = split_ws(rest);
      auto num = [&](const std::string& s) {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
          fail_at(l, col, "fiber size must be a number");
        return static_cast<std::size_t>(std::stoul(s));
      };
      if (toks.size() == 1) {
        for (auto& s : sizes) s = num(toks[0]);
      } else if (toks.size() == 2) {
        auto x = c.base.find(toks[0]);
        if (!x) fail_at(l, col, "unknown point '" + toks[0] + "'");
        sizes[*x] = num(toks[1]);
      } else {
        fail_at(l, col, "expected 'fiber: n' or 'fiber: x n'");
      }
      continue;
    }
    const auto head = split_ws(key);
    if (head.size() != 3 || head[0] != "alpha") fail_at(l, 1, "expected 'alpha x y : permutation'");
    auto x = c.base.find(head[1]), y = c.base.find(head[2]);
    if (!x) fail_at(l, 1, "unknown point '" + head[1] + "'");
    if (!y) fail_at(l, 1, "unknown point '" + head[2] + "'");
    if (!c.base.related(*x, *y)) fail_at(l, 1, "alpha given on unrelated points");
    std::string body = trim(rest);
    if (!body.empty() && body.front() == '[') {
      if (body.back() != ']') fail_at(l, col, "unterminated permutation");
      body = body.substr(1, body.size() - 2);
      std::replace(body.begin(), body.end(), ';', ' ');
    }
    Perm p;
    for (const auto& t : split_ws(body)) {
      if (!std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        fail_at(l, col, "permutation entries must be numbers");
      p.push_back(static_cast<std::size_t>(std::stoul(t)));
    }
    if (!is_perm(p)) fail_at(l, col, "not a permutation");
    if (!c.alpha.emplace(std::make_pair(*x, *y), p).second) fail_at(l, 1, "alpha given twice");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!sizes[i]) throw input_error("no fiber size for '" + c.base.point(i) + "'");
    c.fiber.push_back(*sizes[i]);
  }
  for (const auto& [xy, p] : c.alpha)
    if (p.size() != c.fiber[xy.first] || p.size() != c.fiber[xy.second])
      throw input_error("alpha " + c.base.point(xy.first) + " " + c.base.point(xy.second) +
                        " does not match the fiber sizes");
  // Close under identities, inverses and composition.
  for (std::size_t i = 0; i < n; ++i) c.alpha.emplace(std::make_pair(i, i), identity_perm(c.fiber[i]));
  bool grew = true;
  while (grew) {
    grew = false;
    auto snapshot = c.alpha;
    for (const auto& [xy, p] : snapshot)
      if (c.alpha.emplace(std::make_pair(xy.second, xy.first), inverse(p)).second) grew = true;
    for (const auto& [xy, p] : snapshot)
      for (const auto& [yz, q] : snapshot)
        if (xy.second == yz.first && c.alpha.emplace(std::make_pair(xy.first, yz.second), compose(q, p)).second)
          grew = true;
  }
  for (const auto& cls : c.base.classes())
    for (std::size_t x : cls)
      for (std::size_t y : cls)
        if (!c.alpha.count({x, y}))
          throw input_error("alpha " + c.base.point(x) + " " + c.base.point(y) + " is not determined");
  c.validate();
  return c;
}

std::string format_cocycle(const Cocycle& c) {
  std::string out = er_lines(c.base);
  if (c.uniform() && !c.fiber.empty()) {
    out += "fiber: " + std::to_string(c.fiber.front()) + "\n";
  } else {
    for (std::size_t i = 0; i < c.fiber.size(); ++i)
      out += "fiber: " + c.base.point(i) + " " + std::to_string(c.fiber[i]) + "\n";
  }
  for (const auto& [xy, p] : c.alpha)
    if (xy.first != xy.second)
      out += "alpha " + c.base.point(xy.first) + " " + c.base.point(xy.second) + " : " + perm_name(p) + "\n";
  return out;
}

// ---------------------------------------------------------------- lattices

FinPoset parse_poset(const std::string& text) {
  if (looks_json(text)) {
    const json j = parse_json(text);
    auto els = json_get<std::vector<std::string>>(j, "elements");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& p : json_get<std::vector<std::vector<std::string>>>(j, "order")) {
      if (p.size() != 2) throw input_error("order pairs have two entries");
      pairs.emplace_back(p[0], p[1]);
    }
    return FinPoset(std::move(els), pairs);
  }
  const auto lines = content_lines(text);
  std::string key, rest;
  std::size_t col = 0;
  if (lines.empty()) throw input_error("missing 'elements:' line");
  require_key(lines[0], key, rest, col);
  if (key != "elements") fail_at(lines[0], 1, "expected 'elements:'");
  std::vector<std::string> els = split_ws(rest);
  std::set<std::string> known(els.begin(), els.end());
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    require_key(lines[i], key, rest, col);
    if (key != "order") fail_at(lines[i], 1, "expected 'order:'");
    for (const auto& t : parse_tuples(lines[i], rest, col)) {
      if (t.size() != 2) fail_at(lines[i], col, "order pairs have two entries");
      for (const auto& e : t)
        if (!known.count(e)) fail_at(lines[i], col, "unknown element '" + e + "'");
      pairs.emplace_back(t[0], t[1]);
    }
  }
  return FinPoset(std::move(els), pairs);
}

std::string format_poset(const FinPoset& P) {
  std::string out = "elements: " + join(P.elements(), " ") + "\n";
  const auto cov = P.covers();
  if (!cov.empty()) {
    out += "order:";
    for (const auto& [a, b] : cov) out += " " + tuple_name({P.element(a), P.element(b)});
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------- families and graphs

SetFamily parse_family(const std::string& text) {
  if (looks_json(text)) {
    const json j = parse_json(text);
    auto sets = json_get<std::vector<std::vector<std::string>>>(j, "sets");
    std::vector<std::string> ground;
    if (j.contains("points")) {
      ground = json_get<std::vector<std::string>>(j, "points");
    } else {
      std::set<std::string> u;
      for (const auto& s : sets) u.insert(s.begin(), s.end());
      ground.assign(u.begin(), u.end());
    }
    return SetFamily::from_names(std::move(ground), sets);
  }
  const auto lines = content_lines(text);
  std::string key, rest;
  std::size_t col = 0;
  std::optional<std::vector<std::string>> ground;
  std::vector<std::vector<std::string>> sets;
  for (const auto& l : lines) {
    require_key(l, key, rest, col);
    if (key == "points") {
      if (ground) fail_at(l, 1, "repeated 'points:' line");
      ground = split_ws(rest);
    } else if (key == "set") {
      sets.push_back(split_ws(rest));
    } else {
      fail_at(l, 1, "expected 'points:' or 'set:'");
    }
  }
  if (!ground) {
    std::set<std::string> u;
    for (const auto& s : sets) u.insert(s.begin(), s.end());
    ground.emplace(u.begin(), u.end());
  }
  return SetFamily::from_names(std::move(*ground), sets);
}

std::string format_family(const SetFamily& F) {
  std::string out = "points: " + join(F.ground(), " ") + "\n";
  for (auto s : F.sets()) out += "set: " + join(F.members(s), " ") + "\n";
  return out;
}

Graphing parse_graphing(const std::string& text) {
  if (looks_json(text)) {
    const json j = parse_json(text);
    FinER E(json_get<std::vector<std::string>>(j, "points"),
            json_get<std::vector<std::vector<std::string>>>(j, "classes"));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : json_get<std::vector<std::vector<std::string>>>(j, "edges")) {
      if (e.size() != 2) throw input_error("edges have two endpoints");
      edges.emplace_back(E.index(e[0]), E.index(e[1]));
    }
    return Graphing(std::move(E), std::move(edges));
  }
  const auto lines = content_lines(text);
  std::size_t pos = 0;
  FinER E = er_from_lines(lines, pos);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::string key, rest;
  std::size_t col = 0;
  for (; pos < lines.size(); ++pos) {
    const Line& l = lines[pos];
    require_key(l, key, rest, col);
    if (key != "edge") fail_at(l, 1, "expected 'edge: a b'");
    const auto toks = split_ws(rest);
    if (toks.size() != 2) fail_at(l, col, "an edge has two endpoints");
    auto a = E.find(toks[0]), b = E.find(toks[1]);
    if (!a) fail_at(l, col, "unknown point '" + toks[0] + "'");
    if (!b) fail_at(l, col, "unknown point '" + toks[1] + "'");
    edges.emplace_back(*a, *b);
  }
  return Graphing(std::move(E), std::move(edges));
}

std::string format_graphing(const Graphing& G) {
  std::string out = er_lines(G.er());
  for (const auto& [a, b] : G.edges()) out += "edge: " + G.er().point(a) + " " + G.er().point(b) + "\n";
  return out;
}

// ---------------------------------------------------------------- JSON

std::string er_to_json(const FinER& E) {
  json j;
  j["points"] = E.points();
  j["classes"] = E.named_classes();
  return j.dump(2);
}

std::string map_to_json(const PointMap& f) {
  json j;
  j["map"] = f.named();
  return j.dump(2);
}

std::string structure_to_json(const FinStructure& A) {
  json j;
  j["language"] = json::array();
  for (const auto& s : A.language().symbols()) j["language"].push_back({{"name", s.name}, {"arity", s.arity}});
  j["universe"] = A.universe();
  j["relations"] = json::object();
  for (std::size_t s = 0; s < A.language().size(); ++s) {
    json ts = json::array();
    for (const auto& t : A.tuples(s)) {
      std::vector<std::string> names;
      for (std::size_t i : t) names.push_back(A.universe()[i]);
      ts.push_back(names);
    }
    j["relations"][A.language()[s].name] = ts;
  }
  return j.dump(2);
}

std::string poset_to_json(const FinPoset& P) {
  json j;
  j["elements"] = P.elements();
  j["order"] = json::array();
  for (const auto& [a, b] : P.covers()) j["order"].push_back({P.element(a), P.element(b)});
  return j.dump(2);
}

std::string family_to_json(const SetFamily& F) {
  json j;
  j["points"] = F.ground();
  j["sets"] = json::array();
  for (auto s : F.sets()) j["sets"].push_back(F.members(s));
  return j.dump(2);
}

std::string graphing_to_json(const Graphing& G) {
  json j;
  j["points"] = G.er().points();
  j["classes"] = G.er().named_classes();
  j["edges"] = json::array();
  for (const auto& [a, b] : G.edges()) j["edges"].push_back({G.er().point(a), G.er().point(b)});
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace structo
