#include "pcity/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace pcity {

namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

void write_terms(std::ostream& out, const MilpModel& model, const std::vector<int>& index,
                 const std::vector<double>& coef) {
  std::size_t width = 0;
  bool first = true;
  for (std::size_t k = 0; k < index.size(); ++k) {
    const double c = coef[k];
    if (c == 0.0) continue;
    std::string term = c < 0 ? " - " : (first ? " " : " + ");
    if (std::abs(c) != 1.0) term += num(std::abs(c)) + " ";
    term += model.variables[static_cast<std::size_t>(index[k])].name;
    if (width > 200) {
      out << "\n ";
      width = 0;
    }
    out << term;
    width += term.size();
    first = false;
  }
  if (first) out << " 0 " << (model.variables.empty() ? "dummy" : model.variables[0].name);
}

// --- reading -------------------------------------------------------------

struct Token {
  enum Kind { Ident, Number, Op, Colon, Sign } kind;
  std::string text;
  double value = 0.0;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto is_ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("_.[]{}!\"#$%&()/,;?@'`|~").find(c) !=
                                                              std::string_view::npos;
  };
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '\\') {
      while (i < n && text[i] != '\n') ++i;
    } else if (c == '+' || c == '-') {
      out.push_back({Token::Sign, std::string(1, c)});
      ++i;
    } else if (c == ':') {
      out.push_back({Token::Colon, ":"});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      ++i;
      if (i < n && (text[i] == '=' || text[i] == '<' || text[i] == '>')) op += text[i++];
      if (op == "=<" || op == "<") op = "<=";
      if (op == "=>" || op == ">") op = ">=";
      if (op == "==") op = "=";
      out.push_back({Token::Op, op});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      const double v = std::stod(text.substr(i, 64), &used);
      out.push_back({Token::Number, text.substr(i, used), v});
      i += used;
    } else if (is_ident_char(c)) {
      std::size_t j = i;
      while (j < n && is_ident_char(text[j])) ++j;
      out.push_back({Token::Ident, text.substr(i, j - i)});
      i = j;
    } else {
      throw ValidationError(std::string("LP: unexpected character '") + c + "'");
    }
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

enum class Section { None, Objective, Rows, Bounds, General, End };

class LpReader {
 public:
  explicit LpReader(std::vector<Token> tokens) : t_(std::move(tokens)) {}

  MilpModel run(double offset) {
    m_.objective_offset = offset;
    Section section = Section::None;
    while (pos_ < t_.size()) {
      if (auto s = section_at(pos_)) {
        section = *s;
        if (section == Section::End) break;
        continue;
      }
      switch (section) {
        case Section::Objective: parse_objective(); break;
        case Section::Rows: parse_row(); break;
        case Section::Bounds: parse_bound(); break;
        case Section::General: {
          const Token& tok = expect(Token::Ident, "variable name");
          m_.variables[static_cast<std::size_t>(var(tok.text))].integer = true;
          break;
        }
        default: throw ValidationError("LP: content before the objective section");
      }
    }
    return std::move(m_);
  }

 private:
  // Recognizes a section keyword at position p and advances past it.
  std::optional<Section> section_at(std::size_t p) {
    if (t_[p].kind != Token::Ident) return std::nullopt;
    // A keyword followed by ':' is a row or objective name.
    if (p + 1 < t_.size() && t_[p + 1].kind == Token::Colon) return std::nullopt;
    const std::string w = lower(t_[p].text);
    if (w == "minimize" || w == "minimum" || w == "min") {
      pos_ = p + 1;
      return Section::Objective;
    }
    if (w == "maximize" || w == "max" || w == "maximum") throw ValidationError("LP: maximization is not supported");
    if (w == "subject" && p + 1 < t_.size() && lower(t_[p + 1].text) == "to") {
      pos_ = p + 2;
      return Section::Rows;
    }
    if (w == "st" || w == "s.t." || w == "such") {
      pos_ = p + 1;
      if (w == "such" && pos_ < t_.size() && lower(t_[pos_].text) == "that") ++pos_;
      return Section::Rows;
    }
    if (w == "bounds" || w == "bound") {
      pos_ = p + 1;
      return Section::Bounds;
    }
    if (w == "general" || w == "generals" || w == "gen") {
      pos_ = p + 1;
      return Section::General;
    }
    if (w == "end") {
      pos_ = p + 1;
      return Section::End;
    }
    return std::nullopt;
  }

  const Token& expect(Token::Kind kind, const char* what) {
    if (pos_ >= t_.size() || t_[pos_].kind != kind) throw ValidationError(std::string("LP: expected ") + what);
    return t_[pos_++];
  }

  int var(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    const int id = static_cast<int>(m_.variables.size());
    Variable v;
    v.name = name;
    v.lower = 0.0;
    v.upper = kInfinity;
    m_.variables.push_back(v);
    index_.emplace(name, id);
    return id;
  }

  bool at_section() { return pos_ < t_.size() && section_peek(); }
  bool section_peek() {
    const std::size_t save = pos_;
    const bool is = section_at(pos_).has_value();
    pos_ = save;
    return is;
  }

  std::string optional_label() {
    if (pos_ + 1 < t_.size() && t_[pos_].kind == Token::Ident && t_[pos_ + 1].kind == Token::Colon) {
      std::string name = t_[pos_].text;
      pos_ += 2;
      return name;
    }
    return {};
  }

  // Linear expression up to a relational operator, a section keyword or the
  // start of the next labelled row.
  void parse_expression(std::vector<int>& index, std::vector<double>& coef, bool objective) {
    while (pos_ < t_.size()) {
      if (t_[pos_].kind == Token::Op) return;
      if (at_section()) return;
      if (objective && pos_ + 1 < t_.size() && t_[pos_].kind == Token::Ident && t_[pos_ + 1].kind == Token::Colon) {
        return;
      }
      double sign = 1.0;
      while (pos_ < t_.size() && t_[pos_].kind == Token::Sign) {
        if (t_[pos_].text == "-") sign = -sign;
        ++pos_;
      }
      double c = 1.0;
      if (pos_ < t_.size() && t_[pos_].kind == Token::Number) c = t_[pos_++].value;
      if (pos_ < t_.size() && t_[pos_].kind == Token::Ident && !at_section()) {
        index.push_back(var(t_[pos_++].text));
        coef.push_back(sign * c);
      } else if (objective) {
        const_term_ += sign * c;
      } else {
        throw ValidationError("LP: expected a variable in an expression");
      }
    }
  }

  double signed_number() {
    double sign = 1.0;
    while (pos_ < t_.size() && t_[pos_].kind == Token::Sign) {
      if (t_[pos_].text == "-") sign = -sign;
      ++pos_;
    }
    if (pos_ < t_.size() && t_[pos_].kind == Token::Number) return sign * t_[pos_++].value;
    if (pos_ < t_.size() && t_[pos_].kind == Token::Ident) {
      const std::string w = lower(t_[pos_].text);
      if (w == "inf" || w == "infinity") {
        ++pos_;
        return sign * kInfinity;
      }
    }
    throw ValidationError("LP: expected a number");
  }

  void parse_objective() {
    optional_label();
    std::vector<int> index;
    std::vector<double> coef;
    parse_expression(index, coef, true);
    for (std::size_t k = 0; k < index.size(); ++k) m_.variables[static_cast<std::size_t>(index[k])].cost += coef[k];
    m_.objective_offset += const_term_;
    const_term_ = 0.0;
  }

  void parse_row() {
    Constraint row;
    row.name = optional_label();
    if (row.name.empty()) row.name = "r" + std::to_string(m_.constraints.size());
    parse_expression(row.index, row.coef, false);
    const std::string op = expect(Token::Op, "relational operator").text;
    const double rhs = signed_number();
    if (op == "<=") row.upper = rhs;
    else if (op == ">=") row.lower = rhs;
    else row.lower = row.upper = rhs;
    m_.constraints.push_back(std::move(row));
  }

  bool is_number_like(std::size_t p) const {
    while (p < t_.size() && t_[p].kind == Token::Sign) ++p;
    if (p >= t_.size()) return false;
    if (t_[p].kind == Token::Number) return true;
    const std::string w = lower(t_[p].text);
    return t_[p].kind == Token::Ident && (w == "inf" || w == "infinity");
  }

  void apply(int v, const std::string& op, double value, bool var_on_left) {
    auto& x = m_.variables[static_cast<std::size_t>(v)];
    std::string o = op;
    if (!var_on_left && o != "=") o = o == "<=" ? ">=" : "<=";
    if (o == "<=") x.upper = value;
    else if (o == ">=") x.lower = value;
    else x.lower = x.upper = value;
  }

  void parse_bound() {
    if (is_number_like(pos_)) {
      const double left = signed_number();
      const std::string op = expect(Token::Op, "relational operator").text;
      const int v = var(expect(Token::Ident, "variable name").text);
      apply(v, op, left, false);
      if (pos_ < t_.size() && t_[pos_].kind == Token::Op) {
        const std::string op2 = t_[pos_++].text;
        apply(v, op2, signed_number(), true);
      }
      return;
    }
    const int v = var(expect(Token::Ident, "variable name").text);
    if (pos_ < t_.size() && t_[pos_].kind == Token::Ident && lower(t_[pos_].text) == "free") {
      ++pos_;
      m_.variables[static_cast<std::size_t>(v)].lower = -kInfinity;
      m_.variables[static_cast<std::size_t>(v)].upper = kInfinity;
      return;
    }
    const std::string op = expect(Token::Op, "relational operator").text;
    apply(v, op, signed_number(), true);
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
  MilpModel m_;
  std::unordered_map<std::string, int> index_;
  double const_term_ = 0.0;
};

}  // namespace

void write_lp(const MilpModel& model, std::ostream& out) {
  out << "\\ offset " << num(model.objective_offset) << "\n";
  out << "Minimize\n obj:";
  std::vector<int> index;
  std::vector<double> coef;
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    if (model.variables[j].cost != 0.0) {
      index.push_back(static_cast<int>(j));
      coef.push_back(model.variables[j].cost);
    }
  }
  write_terms(out, model, index, coef);
  out << "\nSubject To\n";
  auto row_line = [&](const std::string& name, const Constraint& c, const char* op, double rhs) {
    out << " " << name << ":";
    write_terms(out, model, c.index, c.coef);
    out << " " << op << " " << num(rhs) << "\n";
  };
  for (std::size_t i = 0; i < model.constraints.size(); ++i) {
    const auto& c = model.constraints[i];
    const std::string name = c.name.empty() ? "r" + std::to_string(i) : c.name;
    const bool lo = std::isfinite(c.lower);
    const bool up = std::isfinite(c.upper);
    if (lo && up && c.lower == c.upper) row_line(name, c, "=", c.lower);
    else if (lo && up) {
      row_line(name + "_lo", c, ">=", c.lower);
      row_line(name + "_hi", c, "<=", c.upper);
    } else if (lo) row_line(name, c, ">=", c.lower);
    else if (up) row_line(name, c, "<=", c.upper);
  }
  out << "Bounds\n";
  for (const auto& v : model.variables) {
    if (v.lower == v.upper) out << " " << v.name << " = " << num(v.lower) << "\n";
    else if (v.lower == -kInfinity && v.upper == kInfinity) out << " " << v.name << " free\n";
    else if (v.lower == 0.0 && v.upper == kInfinity) continue;
    else if (v.upper == kInfinity) out << " " << v.name << " >= " << num(v.lower) << "\n";
    else if (v.lower == -kInfinity) out << " -inf <= " << v.name << " <= " << num(v.upper) << "\n";
    else out << " " << num(v.lower) << " <= " << v.name << " <= " << num(v.upper) << "\n";
  }
  bool any_int = false;
  for (const auto& v : model.variables) {
    if (!v.integer) continue;
    if (!any_int) out << "General\n";
    any_int = true;
    out << " " << v.name << "\n";
  }
  out << "End\n";
}

std::string to_lp_string(const MilpModel& model) {
  std::ostringstream s;
  write_lp(model, s);
  return s.str();
}

MilpModel read_lp(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  double offset = 0.0;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("\\ offset ", 0) == 0) offset = std::stod(line.substr(9));
  }
  return LpReader(tokenize(text)).run(offset);
}

MilpModel read_lp_string(const std::string& text) {
  std::istringstream s(text);
  return read_lp(s);
}

Solution read_solution(std::istream& in, const MilpModel& model) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t j = 0; j < model.variables.size(); ++j) index.emplace(model.variables[j].name, j);
  Solution sol;
  sol.status = SolveStatus::Error;
  sol.message = "solution file has no @status line";
  std::vector<double> values(model.variables.size(), 0.0);
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (model.variables[j].lower == model.variables[j].upper) values[j] = model.variables[j].lower;
  }
  bool has_objective = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string name, value;
    if (!(ls >> name)) continue;
    if (!(ls >> value)) throw ValidationError("solution line " + std::to_string(line_no) + ": missing value");
    if (name == "@status") {
      static const std::pair<const char*, SolveStatus> names[] = {
          {"Optimal", SolveStatus::Optimal},     {"Infeasible", SolveStatus::Infeasible},
          {"Unbounded", SolveStatus::Unbounded}, {"GapLimit", SolveStatus::GapLimit},
          {"Error", SolveStatus::Error}};
      bool found = false;
      for (const auto& [label, status] : names) {
        if (value == label) {
          sol.status = status;
          found = true;
        }
      }
      if (!found) throw ValidationError("solution: unknown status '" + value + "'");
      sol.message.clear();
      std::string rest;
      std::getline(ls, rest);
      if (!rest.empty()) sol.message = rest.substr(rest.find_first_not_of(' ') == std::string::npos ? 0 : rest.find_first_not_of(' '));
    } else if (name == "@objective") {
      sol.objective = std::stod(value);
      has_objective = true;
    } else {
      auto it = index.find(name);
      if (it == index.end()) throw ValidationError("solution: unknown variable '" + name + "'");
      values[it->second] = std::stod(value);
    }
  }
  if (sol.status == SolveStatus::Optimal || sol.status == SolveStatus::GapLimit) {
    sol.values = std::move(values);
    sol.objective = model.objective(sol.values);
    sol.bound = sol.objective;
    sol.gap = 0.0;
  } else if (!has_objective) {
    sol.objective = std::numeric_limits<double>::quiet_NaN();
  }
  return sol;
}

void write_solution(const Solution& solution, const MilpModel& model, std::ostream& out) {
  out << "@status " << to_string(solution.status) << "\n";
  if (solution.has_values()) {
    out << "@objective " << num(solution.objective) << "\n";
    for (std::size_t j = 0; j < model.variables.size(); ++j) {
      out << model.variables[j].name << " " << num(solution.values[j]) << "\n";
    }
  }
}

}  // namespace pcity
