#pragma once

// Command parsing and dispatch for the scatterlab binary.
//
// A command line is "<verb> <arguments> [--flag value]...". Arguments use the term
// and word grammars of syntax.hpp. Flags are masked out before the arguments are
// parsed, so diagnostics report columns of the original input.

#include "scatterlab/closure.hpp"
#include "scatterlab/cut_space.hpp"
#include "scatterlab/error.hpp"
#include "scatterlab/group.hpp"
#include "scatterlab/syntax.hpp"
#include "scatterlab/words.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace scatterlab::cli {

enum class Format { Text, Json, Svg };

struct Options {
  std::int64_t budget = 50;
  std::int64_t depth = 8;
  std::int64_t upto = 16;
  Format format = Format::Text;
  std::optional<std::string> corpus;
  std::optional<std::string> group;
  std::optional<std::string> test_group;
  std::optional<std::string> subgroup;
  std::optional<std::string> pair;
  std::optional<std::string> pair2;
  std::optional<Element> element;
};

struct Command {
  std::string verb;
  std::optional<OrderTerm> term;
  std::vector<WordTerm> words;
  std::optional<std::int64_t> number;
  Options options;
};

struct Report {
  int exit_code = 0;
  std::string out;
  std::string err;
};

namespace exit_code {
constexpr int ok = 0;
constexpr int usage = 1;
constexpr int domain = 2;
constexpr int budget = 3;
}  // namespace exit_code

inline const std::set<std::string>& term_verbs() {
  static const std::set<std::string> verbs{"scattered", "rank", "cuts", "embed", "gaps", "cbrank", "derive", "sderive"};
  return verbs;
}

inline const std::set<std::string>& group_verbs() {
  static const std::set<std::string> verbs{"homs", "closed", "closure", "elrank", "compare"};
  return verbs;
}

inline const std::set<std::string>& word_verbs() {
  static const std::set<std::string> verbs{"wvalidate", "wcount", "wordtype", "project", "reduce", "telescope", "eq"};
  return verbs;
}

inline std::string usage_text() {
  return "usage: scatterlab <verb> [arguments] [--budget N] [--depth D] [--upto N]\n"
         "                  [--format text|json|svg] [--corpus PATH]\n"
         "  order terms:  scattered | rank | cuts | embed | gaps | cbrank | derive | sderive  TERM\n"
         "  words:        wvalidate W | wcount W n | wordtype W | project W N | reduce W\n"
         "                telescope W | eq W1 W2\n"
         "  groups:       homs --test-group P --group G\n"
         "                closed | closure --group G [--subgroup 0,4] --pair PAIR.json\n"
         "                elrank --group G [--subgroup ...] --pair PAIR.json --element a\n"
         "                compare --pair P1.json --pair2 P2.json --corpus CORPUS.json\n";
}

namespace detail {

inline std::int64_t parse_count(const std::string& flag, const std::string& value) {
  Scanner s(value);
  std::int64_t n = 0;
  try {
    n = s.number();
  } catch (const ParseError&) {
    throw Error(ErrorKind::Usage, flag + " expects a non-negative integer, got '" + value + "'");
  }
  if (!s.at_end()) throw Error(ErrorKind::Usage, flag + " expects a non-negative integer, got '" + value + "'");
  return n;
}

struct Token {
  std::size_t begin;
  std::size_t end;
};

inline std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    const std::size_t b = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    out.push_back({b, i});
  }
  return out;
}

}  // namespace detail

inline Command parse(const std::string& input) {
  std::string masked = input;
  Command cmd;
  const auto tokens = detail::tokenize(input);
  if (tokens.empty()) throw Error(ErrorKind::Usage, "missing verb");
  auto text_of = [&](const detail::Token& t) { return input.substr(t.begin, t.end - t.begin); };
  auto blank = [&](const detail::Token& t) {
    for (std::size_t i = t.begin; i < t.end; ++i) masked[i] = ' ';
  };
  cmd.verb = text_of(tokens.front());
  blank(tokens.front());
  if (!term_verbs().count(cmd.verb) && !word_verbs().count(cmd.verb) && !group_verbs().count(cmd.verb)) {
    throw Error(ErrorKind::Usage, "unknown verb '" + cmd.verb + "'");
  }
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto flag = text_of(tokens[i]);
    if (flag.rfind("--", 0) != 0) continue;
    if (i + 1 >= tokens.size()) throw Error(ErrorKind::Usage, flag + " needs a value");
    const auto value = text_of(tokens[i + 1]);
    blank(tokens[i]);
    blank(tokens[i + 1]);
    ++i;
    auto& o = cmd.options;
    if (flag == "--budget") {
      o.budget = detail::parse_count(flag, value);
      if (o.budget < 1) throw Error(ErrorKind::Usage, "--budget must be positive");
    } else if (flag == "--depth") {
      o.depth = detail::parse_count(flag, value);
    } else if (flag == "--upto") {
      o.upto = detail::parse_count(flag, value);
      if (o.upto < 1) throw Error(ErrorKind::Usage, "--upto must be positive");
    } else if (flag == "--format") {
      if (value == "text") o.format = Format::Text;
      else if (value == "json") o.format = Format::Json;
      else if (value == "svg") o.format = Format::Svg;
      else throw Error(ErrorKind::Usage, "--format must be text, json or svg");
    } else if (flag == "--corpus") {
      o.corpus = value;
    } else if (flag == "--group") {
      o.group = value;
    } else if (flag == "--test-group") {
      o.test_group = value;
    } else if (flag == "--subgroup") {
      o.subgroup = value;
    } else if (flag == "--pair") {
      o.pair = value;
    } else if (flag == "--pair2") {
      o.pair2 = value;
    } else if (flag == "--element") {
      o.element = static_cast<Element>(detail::parse_count(flag, value));
    } else {
      throw Error(ErrorKind::Usage, "unknown flag " + flag);
    }
  }
  if (cmd.options.format == Format::Svg && cmd.verb != "embed" && cmd.verb != "gaps") {
    throw Error(ErrorKind::Usage, "--format svg is only available for embed and gaps");
  }

  Scanner s(masked);
  if (term_verbs().count(cmd.verb)) {
    cmd.term = scatterlab::detail::parse_term(s);
    if (!s.at_end()) s.fail({"'+'", "flag", "end of input"});
  } else if (word_verbs().count(cmd.verb)) {
    const bool two_words = cmd.verb == "eq";
    const bool with_number = cmd.verb == "wcount" || cmd.verb == "project";
    cmd.words.push_back(scatterlab::detail::parse_word(s));
    if (two_words) cmd.words.push_back(scatterlab::detail::parse_word(s));
    if (with_number) {
      cmd.number = s.number();
      if (*cmd.number < 1) throw Error(ErrorKind::Usage, cmd.verb + " needs a positive index");
    }
    if (!s.at_end()) s.fail({"'.'", "flag", "end of input"});
  } else if (!s.at_end()) {
    s.fail({"flag", "end of input"});
  }
  return cmd;
}

// Budgets, depths and stage counts are clamped to the cap.
inline void apply_budget_cap(Command& cmd, std::optional<std::int64_t> cap) {
  if (!cap) return;
  auto& o = cmd.options;
  o.budget = std::min(o.budget, *cap);
  o.depth = std::min(o.depth, *cap);
  o.upto = std::min(o.upto, *cap);
}

inline std::optional<std::int64_t> budget_cap_from_env() {
  const char* raw = std::getenv("SCATTERLAB_BUDGET_CAP");
  if (!raw || !*raw) return std::nullopt;
  return detail::parse_count("SCATTERLAB_BUDGET_CAP", raw);
}

// ---------------------------------------------------------------------------
// Rendering helpers

namespace detail {

inline std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

inline std::string svg_number_line(const EmbeddedSet& set, const std::vector<Point>* points, const GapList* gaps) {
  const double width = 640, margin = 20, y = 40;
  const double lo = to_double(set.lo()), hi = to_double(set.hi());
  auto x_of = [&](const Rational& r) { return margin + (to_double(r) - lo) / (hi - lo) * (width - 2 * margin); };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"80\" viewBox=\"0 0 640 80\">\n";
  out << "  <title>" << to_string(set.generator()) << "</title>\n";
  out << "  <line x1=\"" << fixed(margin) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(width - margin)
      << "\" y2=\"" << fixed(y) << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  if (gaps) {
    for (const auto& g : *gaps) {
      out << "  <line x1=\"" << fixed(x_of(g.lo)) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(x_of(g.hi))
          << "\" y2=\"" << fixed(y) << "\" stroke=\"#3366cc\" stroke-width=\"3\"/>\n";
    }
  }
  if (points) {
    for (const auto& p : *points) {
      const bool limit = p.left_limit || p.right_limit;
      out << "  <circle cx=\"" << fixed(x_of(p.coord)) << "\" cy=\"" << fixed(y) << "\" r=\"" << (limit ? "3" : "2")
          << "\" fill=\"" << (limit ? "#cc3333" : "#222222") << "\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Usage, path + ": " + e.what());
  }
}

// A file path, or a built-in group name when no such file exists.
inline FiniteGroup load_group(const std::string& arg) {
  const bool looks_like_path = arg.find('/') != std::string::npos || arg.ends_with(".json");
  if (!looks_like_path && !std::filesystem::exists(arg)) return group_by_name(arg);
  return group_from_json(read_json_file(arg));
}

inline ClosurePair load_pair(const std::string& path) { return pair_from_json(read_json_file(path)); }

inline SubgroupSet load_subgroup(const FiniteGroup& g, const std::optional<std::string>& arg) {
  if (!arg) return SubgroupSet::trivial(g);
  std::vector<Element> elems;
  std::stringstream ss(*arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    elems.push_back(static_cast<Element>(parse_count("--subgroup", item)));
  }
  return SubgroupSet::from_elements(g, elems);
}

inline const std::string& require(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw Error(ErrorKind::Usage, std::string("missing ") + flag);
  return *v;
}

inline nlohmann::json elements_json(const SubgroupSet& h) { return h.elements(); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Dispatch

namespace detail {

struct Outcome {
  std::string text;
  nlohmann::json result;
  std::string input;
  std::string svg;
};

inline Outcome run_term_verb(const Command& cmd) {
  const auto& term = *cmd.term;
  const auto budget = static_cast<std::size_t>(cmd.options.budget);
  Outcome o;
  o.input = to_string(term);
  const auto& v = cmd.verb;
  if (v == "scattered") {
    const bool s = is_scattered(term);
    o.text = s ? "true" : "false";
    o.result = s;
  } else if (v == "rank") {
    require_scattered(term);
    o.text = syntactic_rank(term).str();
    o.result = o.text;
  } else if (v == "cuts") {
    o.text = to_string(cuts(term));
    o.result = o.text;
  } else if (v == "embed") {
    auto set = embed(term);
    auto pts = set.points(budget);
    o.result = to_json(set, pts);
    o.svg = svg_number_line(set, &pts, nullptr);
    o.text = "generator " + to_string(term) + " on [" + to_string(set.lo()) + ", " + to_string(set.hi()) + "]";
    for (const auto& p : pts) {
      o.text += "\n" + to_string(p.coord);
      if (p.left_limit) o.text += " left_limit";
      if (p.right_limit) o.text += " right_limit";
    }
  } else if (v == "gaps") {
    auto set = embed(term);
    auto gs = gaps(set, budget);
    o.result = to_json(set, gs);
    auto pts = set.points(budget);
    o.svg = svg_number_line(set, &pts, &gs);
    o.text = std::to_string(gs.size()) + (gs.size() == 1 ? " gap" : " gaps");
    for (const auto& g : gs) o.text += "\n(" + to_string(g.lo) + ", " + to_string(g.hi) + ")";
  } else if (v == "cbrank") {
    o.text = cb_rank(term).str();
    o.result = o.text;
  } else if (v == "derive") {
    o.text = to_string(derived_set(term));
    o.result = o.text;
  } else if (v == "sderive") {
    auto seq = derived_sequence(embed(term));
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& st : seq.stages) {
      o.text += "S_" + st.index.str() + " = " + to_string(st.set.generator()) + "\n";
      stages.push_back({{"index", st.index.str()}, {"set", to_string(st.set.generator())}});
    }
    o.text += "rank " + seq.rank.str();
    o.result = {{"stages", stages}, {"rank", seq.rank.str()}};
  }
  return o;
}

inline Outcome run_word_verb(const Command& cmd) {
  for (const auto& w : cmd.words) validate(w);
  const auto& w = cmd.words.front();
  const auto depth = static_cast<unsigned>(cmd.options.depth);
  Outcome o;
  o.input = to_string(w);
  const auto& v = cmd.verb;
  if (v == "wvalidate") {
    o.text = "ok";
    o.result = "ok";
  } else if (v == "wcount") {
    o.input += " " + std::to_string(*cmd.number);
    const auto n = letter_count(w, *cmd.number);
    o.text = std::to_string(n);
    o.result = n;
  } else if (v == "wordtype") {
    o.text = to_string(order_type(w));
    o.result = o.text;
  } else if (v == "project") {
    o.input += " " + std::to_string(*cmd.number);
    o.text = project(w, *cmd.number).str();
    o.result = o.text;
  } else if (v == "reduce") {
    o.text = to_string(reduce_bounded(w, depth));
    o.result = o.text;
  } else if (v == "telescope") {
    auto t = telescope(w, depth);
    if (!t) throw Error(ErrorKind::NotApplicable, "no telescoping pattern in " + to_string(w));
    o.text = to_string(*t);
    o.result = o.text;
  } else if (v == "eq") {
    o.input += " " + to_string(cmd.words[1]);
    const auto upto = cmd.options.upto;
    auto diff = first_difference(w, cmd.words[1], upto);
    if (diff) {
      o.text = "false (stage " + std::to_string(*diff) + " differs)";
      o.result = {{"equal", false}, {"stage", *diff}};
    } else {
      o.text = "true (stages 1.." + std::to_string(upto) + " agree)";
      o.result = {{"equal", true}, {"upto", upto}};
    }
  }
  return o;
}

inline Outcome run_group_verb(const Command& cmd) {
  const auto& opt = cmd.options;
  Outcome o;
  const auto& v = cmd.verb;
  if (v == "homs") {
    auto from = load_group(require(opt.test_group, "--test-group"));
    auto to = load_group(require(opt.group, "--group"));
    auto homs = enumerate_homs(from, to);
    o.input = from.name() + " -> " + to.name();
    o.text = std::to_string(homs.size()) + " homomorphisms " + o.input;
    nlohmann::json list = nlohmann::json::array();
    for (const auto& f : homs) {
      std::string row;
      for (std::size_t i = 0; i < f.images.size(); ++i) row += (i ? " " : "") + std::to_string(f.images[i]);
      o.text += "\n" + row;
      list.push_back(f.images);
    }
    o.result = list;
    return o;
  }
  if (v == "compare") {
    auto p1 = load_pair(require(opt.pair, "--pair"));
    auto p2 = load_pair(require(opt.pair2, "--pair2"));
    auto corpus = corpus_from_json(read_json_file(require(opt.corpus, "--corpus")));
    auto report = compare_pairs(p1, p2, corpus);
    o.input = p1.str() + " vs " + p2.str();
    o.text = "criterion " + std::to_string(p2.g) + " in cl" + p1.str() + "(" + p2.T.str() + ") = " +
             report.criterion_closure.str() + ": " + (report.criterion ? "true" : "false");
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
      o.text += "\n" + r.group + " " + r.subgroup.str() + ": cl1 " + r.closure_first.str() + " cl2 " +
                r.closure_second.str() + (r.contained ? " contained" : " not contained");
      rows.push_back({{"group", r.group},
                      {"H", elements_json(r.subgroup)},
                      {"cl1", elements_json(r.closure_first)},
                      {"cl2", elements_json(r.closure_second)},
                      {"contained", r.contained}});
    }
    o.text += std::string("\ncontainment ") + (report.containment_everywhere ? "holds everywhere" : "fails somewhere");
    o.text += std::string("\nviolation ") + (report.violation ? "FOUND" : "none");
    o.result = {{"criterion", report.criterion},
                {"criterion_closure", elements_json(report.criterion_closure)},
                {"rows", rows},
                {"containment_everywhere", report.containment_everywhere},
                {"violation", report.violation}};
    return o;
  }
  auto g = load_group(require(opt.group, "--group"));
  auto h = load_subgroup(g, opt.subgroup);
  auto pair = load_pair(require(opt.pair, "--pair"));
  o.input = g.name() + " " + h.str() + " " + pair.str();
  if (v == "closed") {
    const bool c = is_closed(g, h, pair);
    o.text = c ? "true" : "false";
    o.result = c;
  } else if (v == "closure") {
    auto r = closure(g, h, pair);
    o.text = "fixpoint " + r.closure.str();
    nlohmann::json stages = nlohmann::json::array();
    for (std::size_t k = 0; k < r.stages.size(); ++k) {
      o.text += "\nstage " + std::to_string(k) + ": " + r.stages[k].str();
      stages.push_back(elements_json(r.stages[k]));
    }
    o.result = {{"fixpoint", elements_json(r.closure)}, {"stages", stages}};
  } else if (v == "elrank") {
    if (!opt.element) throw Error(ErrorKind::Usage, "missing --element");
    if (!g.valid(*opt.element)) throw Error(ErrorKind::Usage, "--element out of range");
    const auto rank = element_rank(g, h, pair, *opt.element);
    o.input += " " + std::to_string(*opt.element);
    o.text = std::to_string(rank);
    o.result = rank;
  }
  return o;
}

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Usage: return exit_code::usage;
    case ErrorKind::BudgetExceeded: return exit_code::budget;
    default: return exit_code::domain;
  }
}

}  // namespace detail

inline Report run(const Command& cmd) {
  Report report;
  try {
    detail::Outcome o;
    if (term_verbs().count(cmd.verb)) o = detail::run_term_verb(cmd);
    else if (word_verbs().count(cmd.verb)) o = detail::run_word_verb(cmd);
    else o = detail::run_group_verb(cmd);
    switch (cmd.options.format) {
      case Format::Text: report.out = o.text + "\n"; break;
      case Format::Svg: report.out = o.svg; break;
      case Format::Json: {
        nlohmann::json doc = {
            {"command", cmd.verb}, {"input", o.input}, {"result", o.result}, {"budget", cmd.options.budget}};
        report.out = doc.dump(2) + "\n";
        break;
      }
    }
  } catch (const Error& e) {
    report.exit_code = detail::exit_code_for(e.kind());
    report.err = std::string("error: ") + e.what() + "\n";
  } catch (const nlohmann::json::exception& e) {
    report.exit_code = exit_code::usage;
    report.err = std::string("error: malformed input: ") + e.what() + "\n";
  }
  return report;
}

// Parses and runs one command line. Parse and usage failures exit with 1.
inline Report run_line(const std::string& line, std::optional<std::int64_t> cap = std::nullopt) {
  try {
    auto cmd = parse(line);
    apply_budget_cap(cmd, cap);
    return run(cmd);
  } catch (const Error& e) {
    Report r;
    r.exit_code = detail::exit_code_for(e.kind());
    r.err = std::string("error: ") + e.what() + "\n";
    return r;
  }
}

}  // namespace scatterlab::cli
