#include "adaimpact/frontend.hpp"

#include "adaimpact/error.hpp"
#include "adaimpact/hash.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace adaimpact {

namespace {

constexpr char kSubprogramPlaceholder[] = "\x01subprogram";

std::string hash_tokens(const std::vector<Token> &tokens, std::size_t first, std::size_t last) {
  ContentHasher h;
  for (std::size_t i = first; i < last; ++i) {
    h.update(tokens[i].text);
    h.update(" ");
  }
  return h.finish();
}

enum class Head { None, Subprogram, Formal, Package, Task, Protected, Entry, Other };

enum class FrameKind { Unit, Region, Compound, Block };

struct Frame {
  FrameKind kind;
  std::string name;     // Region/Unit: designator; Compound: closing keyword
  bool awaiting_begin = false;
  int line = 0;
};

struct Candidate {
  std::string name;
  SubprogramKind kind;
  std::size_t first_token;
  std::size_t depth_when_open = 0; // stack size after its region was pushed
  bool open = false;
  std::optional<std::size_t> statements_offset;
};

class UnitParser {
public:
  UnitParser(std::string_view path, std::string_view text)
      : path_(path), text_(text), tokens_(lex(text, path)) {}

  ParsedUnit run() {
    result_.unit.path = path_;
    result_.unit.text = std::string(text_);
    parse_context();
    parse_library_item();
    if (result_.unit.kind == UnitKind::Body)
      finish_subprograms();
    else
      result_.residue_hash = hash_tokens(tokens_, 0, tokens_.size());
    result_.withs.erase(result_.unit.package_name);
    return std::move(result_);
  }

private:
  // --- token access -------------------------------------------------------

  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token &peek(std::size_t ahead = 0) const {
    static const Token kEof{TokenKind::Delimiter, "<eof>", 0, 0, 0};
    return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : kEof;
  }
  bool next_is(std::string_view s, std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() && tokens_[pos_ + ahead].is(s);
  }
  int current_line() const {
    if (tokens_.empty()) return 1;
    return at_end() ? tokens_.back().line : tokens_[pos_].line;
  }
  [[noreturn]] void fail(const std::string &message) const {
    throw ParseError(path_, current_line(), message);
  }
  const Token &take() {
    if (at_end()) fail("unexpected end of file");
    return tokens_[pos_++];
  }
  void expect(std::string_view s) {
    if (!next_is(s)) fail("expected '" + std::string(s) + "' but found '" + peek().text + "'");
    ++pos_;
  }
  void skip_past_semicolon() {
    int parens = 0;
    while (!at_end()) {
      const Token &t = take();
      if (t.is("(")) ++parens;
      else if (t.is(")")) parens = std::max(0, parens - 1);
      else if (t.is(";") && parens == 0) return;
    }
    fail("missing ';'");
  }
  std::string dotted_name() {
    const Token &first = take();
    if (first.kind != TokenKind::Identifier || is_reserved_word(first.text))
      fail("expected a name but found '" + first.text + "'");
    std::string name = first.text;
    while (next_is(".") && peek(1).kind == TokenKind::Identifier) {
      pos_ += 1;
      name += "." + take().text;
    }
    return name;
  }

  // --- library level ------------------------------------------------------

  void parse_context() {
    while (!at_end()) {
      if (next_is("pragma") || next_is("use")) {
        skip_past_semicolon();
      } else if (next_is("with") || ((next_is("limited") || next_is("private")) &&
                                      (next_is("with", 1) || next_is("with", 2)))) {
        while (!next_is("with"))
          ++pos_;
        ++pos_;
        result_.withs.insert(dotted_name());
        while (next_is(",")) {
          ++pos_;
          result_.withs.insert(dotted_name());
        }
        expect(";");
      } else {
        return;
      }
    }
  }

  void skip_generic_formal_part() {
    expect("generic");
    while (!at_end() && !next_is("package") && !next_is("procedure") && !next_is("function"))
      skip_past_semicolon();
  }

  void parse_library_item() {
    if (at_end()) fail("no library unit found");
    if (next_is("separate")) fail("subunits ('separate') are not supported");
    if (next_is("private") && !next_is("with", 1)) ++pos_;
    if (next_is("generic")) skip_generic_formal_part();
    if (next_is("procedure") || next_is("function"))
      fail("library-level subprogram units are not supported");
    expect("package");

    const bool is_body = next_is("body");
    if (is_body) ++pos_;
    result_.unit.kind = is_body ? UnitKind::Body : UnitKind::Spec;
    const int unit_line = current_line();
    result_.unit.package_name = dotted_name();
    const auto &name = result_.unit.package_name;
    if (auto dot = name.rfind('.'); dot != std::string::npos)
      result_.withs.insert(name.substr(0, dot));

    if (!is_body && next_is("renames")) {
      ++pos_;
      result_.withs.insert(dotted_name());
      skip_past_semicolon();
    } else {
      expect("is");
      if (!is_body && next_is("new")) {
        ++pos_;
        result_.withs.insert(dotted_name());
        skip_past_semicolon();
      } else {
        stack_.push_back(Frame{FrameKind::Unit, name, is_body, unit_line});
        scan_region();
      }
    }
    while (!at_end()) {
      if (!next_is("pragma")) fail("unexpected '" + peek().text + "' after end of package " + name);
      skip_past_semicolon();
    }
  }

  // --- region scanner -----------------------------------------------------

  [[noreturn]] void unbalanced(const std::string &detail) const {
    if (candidate_ && candidate_->open)
      fail("unbalanced begin/end in subprogram " + result_.unit.package_name + "." +
           candidate_->name + ": " + detail);
    fail("unbalanced begin/end in package " + result_.unit.package_name + ": " + detail);
  }

  bool prev_is(std::string_view s, std::size_t back = 1) const {
    return pos_ >= back && tokens_[pos_ - back].is(s);
  }

  bool body_unit() const { return result_.unit.kind == UnitKind::Body; }

  // Consumes everything up to and including the package's closing `end`.
  void scan_region() {
    Head head = Head::None;
    int parens = 0;
    while (!stack_.empty()) {
      if (at_end()) {
        const Frame &f = stack_.back();
        unbalanced("missing 'end' for construct opened on line " + std::to_string(f.line));
      }
      const Token &t = peek();
      const std::size_t index = pos_;

      if (t.is("(")) {
        ++parens;
        ++pos_;
        continue;
      }
      if (t.is(")")) {
        parens = std::max(0, parens - 1);
        ++pos_;
        continue;
      }
      if (parens > 0 || t.kind != TokenKind::Identifier) {
        if (t.is(";") && parens == 0) on_semicolon(head, index);
        ++pos_;
        continue;
      }

      const std::string &w = t.text;
      if (w == "procedure" || w == "function") {
        const bool ignored = prev_is("access") || (prev_is("protected") && prev_is("access", 2));
        if (prev_is("with")) {
          head = Head::Formal;
        } else if (!ignored) {
          head = Head::Subprogram;
          maybe_start_candidate(index);
        }
        ++pos_;
      } else if (w == "package") {
        head = prev_is("with") ? Head::Formal : Head::Package;
        ++pos_;
      } else if (w == "task") {
        head = Head::Task;
        ++pos_;
      } else if (w == "protected") {
        if (!prev_is("access")) head = Head::Protected;
        ++pos_;
      } else if (w == "entry") {
        head = Head::Entry;
        ++pos_;
      } else if (w == "type" || w == "subtype") {
        if (head == Head::None) head = Head::Other;
        ++pos_;
      } else if (w == "is") {
        ++pos_;
        on_is(head, index);
        head = Head::None;
      } else if (w == "begin") {
        ++pos_;
        Frame &top = stack_.back();
        if ((top.kind == FrameKind::Region || top.kind == FrameKind::Unit) && top.awaiting_begin) {
          top.awaiting_begin = false;
          if (candidate_ && candidate_->open && stack_.size() == candidate_->depth_when_open)
            candidate_->statements_offset = t.offset + t.length;
        } else {
          stack_.push_back(Frame{FrameKind::Block, "", false, t.line});
        }
      } else if (w == "declare") {
        ++pos_;
        stack_.push_back(Frame{FrameKind::Region, "", true, t.line});
      } else if (w == "if" || w == "case" || w == "loop" || w == "select") {
        ++pos_;
        stack_.push_back(Frame{FrameKind::Compound, w, false, t.line});
      } else if (w == "record") {
        ++pos_;
        if (!prev_is("null", 2)) stack_.push_back(Frame{FrameKind::Compound, w, false, t.line});
      } else if (w == "do") {
        ++pos_;
        stack_.push_back(Frame{FrameKind::Block, "do", false, t.line});
      } else if (w == "end") {
        ++pos_;
        on_end();
        head = Head::None;
      } else {
        ++pos_;
      }
    }
  }

  void maybe_start_candidate(std::size_t index) {
    // Only subprograms directly inside the package body are tracked.
    if (!body_unit() || stack_.size() != 1 || candidate_) return;
    const Token &designator = index + 1 < tokens_.size() ? tokens_[index + 1] : tokens_[index];
    const bool named = (designator.kind == TokenKind::Identifier && !is_reserved_word(designator.text)) ||
                       designator.kind == TokenKind::String;
    if (!named) return;
    candidate_ = Candidate{designator.text,
                           tokens_[index].text == "function" ? SubprogramKind::Function
                                                             : SubprogramKind::Procedure,
                           index, 0, false, std::nullopt};
  }

  void on_semicolon(Head &head, std::size_t index) {
    head = Head::None;
    if (candidate_ && !candidate_->open) {
      if (expression_candidate_) {
        close_candidate(index);
      } else {
        candidate_.reset(); // a declaration, renaming or stub
      }
    }
  }

  void on_is(Head head, std::size_t is_index) {
    const int line = tokens_[is_index].line;
    switch (head) {
    case Head::Subprogram:
      if (next_is("new")) {
        ++pos_;
        add_instantiation();
        candidate_.reset();
        return;
      }
      if (next_is("separate") || next_is("abstract")) {
        candidate_.reset();
        return;
      }
      if (next_is("null") || next_is("(")) {
        if (candidate_ && !candidate_->open) expression_candidate_ = true;
        return;
      }
      if (next_is("<>")) return;
      push_named_region(line);
      if (candidate_ && !candidate_->open) {
        candidate_->open = true;
        candidate_->depth_when_open = stack_.size();
      }
      return;
    case Head::Package:
      if (next_is("new")) {
        ++pos_;
        add_instantiation();
        return;
      }
      if (next_is("separate")) return;
      push_named_region(line);
      return;
    case Head::Task:
    case Head::Protected:
    case Head::Entry:
      if (next_is("separate")) return;
      push_named_region(line);
      return;
    default:
      return;
    }
  }

  // The designator of the declaration that just ended in `is`: the last
  // name-like token after the head keyword, before any parameter list.
  std::string pending_designator(std::size_t is_index) const {
    std::size_t i = is_index;
    while (i > 0) {
      --i;
      const auto &w = tokens_[i].text;
      if (tokens_[i].kind == TokenKind::Identifier &&
          (w == "procedure" || w == "function" || w == "package" || w == "task" ||
           w == "protected" || w == "entry")) {
        std::size_t j = i + 1;
        while (j < is_index && (tokens_[j].is("body") || tokens_[j].is("type")))
          ++j;
        if (j >= is_index) return "";
        std::string name = tokens_[j].text;
        while (j + 2 < is_index && tokens_[j + 1].is(".") &&
               tokens_[j + 2].kind == TokenKind::Identifier) {
          name += "." + tokens_[j + 2].text;
          j += 2;
        }
        return name;
      }
    }
    return "";
  }

  void push_named_region(int line) {
    stack_.push_back(Frame{FrameKind::Region, pending_designator(pos_ - 1), true, line});
  }

  void add_instantiation() {
    if (at_end() || peek().kind != TokenKind::Identifier) return;
    result_.withs.insert(dotted_name());
  }

  void on_end() {
    if (stack_.empty()) unbalanced("'end' without an open construct");
    Frame frame = stack_.back();

    std::vector<const Token *> tail;
    while (!at_end() && !peek().is(";"))
      tail.push_back(&take());
    if (at_end()) unbalanced("missing ';' after 'end'");
    const std::size_t semicolon = pos_;
    ++pos_;

    std::string tail_text;
    for (const Token *tok : tail)
      tail_text += tok->text;

    switch (frame.kind) {
    case FrameKind::Compound:
      if (tail.empty() || tail.front()->text != frame.name)
        unbalanced("expected 'end " + frame.name + "' for the construct opened on line " +
                   std::to_string(frame.line) + ", found 'end " + tail_text + "'");
      break;
    case FrameKind::Region:
    case FrameKind::Unit:
      if (!tail.empty() && !frame.name.empty() && tail_text != frame.name)
        unbalanced("'end " + tail_text + "' does not close '" + frame.name + "' opened on line " +
                   std::to_string(frame.line));
      if (frame.name.empty() && !tail.empty() && is_reserved_word(tail.front()->text))
        unbalanced("unexpected 'end " + tail_text + "'");
      break;
    case FrameKind::Block:
      if (!tail.empty() && is_reserved_word(tail.front()->text) &&
          !(frame.name == "do" && tail.front()->text == "return"))
        unbalanced("unexpected 'end " + tail_text + "' closing the block opened on line " +
                   std::to_string(frame.line));
      break;
    }

    stack_.pop_back();
    if (candidate_ && candidate_->open && stack_.size() + 1 == candidate_->depth_when_open)
      close_candidate(semicolon);
  }

  void close_candidate(std::size_t semicolon_index) {
    found_.push_back(Found{*candidate_, semicolon_index});
    candidate_.reset();
    expression_candidate_ = false;
  }

  void finish_subprograms() {
    std::map<std::string, int> counts;
    for (const auto &f : found_)
      ++counts[f.candidate.name];
    std::map<std::string, int> seen;

    ContentHasher residue;
    std::size_t cursor = 0;
    const std::string &pkg = result_.unit.package_name;
    for (const auto &f : found_) {
      const std::size_t first = f.candidate.first_token;
      const std::size_t last = f.semicolon + 1;
      for (; cursor < first; ++cursor) {
        residue.update(tokens_[cursor].text);
        residue.update(" ");
      }
      residue.update(kSubprogramPlaceholder);
      residue.update(" ");
      cursor = last;

      SubprogramDecl decl;
      decl.qualified_name = pkg + "." + f.candidate.name;
      if (counts[f.candidate.name] > 1)
        decl.qualified_name += "#" + std::to_string(++seen[f.candidate.name]);
      decl.kind = f.candidate.kind;
      decl.body_span = Span{tokens_[first].offset, tokens_[f.semicolon].offset + 1};
      decl.statements_offset = f.candidate.statements_offset;
      decl.normalized_hash = hash_tokens(tokens_, first, last);
      result_.subprograms.push_back(std::move(decl));
    }
    for (; cursor < tokens_.size(); ++cursor) {
      residue.update(tokens_[cursor].text);
      residue.update(" ");
    }
    result_.residue_hash = residue.finish();
  }

  struct Found {
    Candidate candidate;
    std::size_t semicolon;
  };

  std::string path_;
  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  ParsedUnit result_;
  std::vector<Frame> stack_;
  std::optional<Candidate> candidate_;
  bool expression_candidate_ = false;
  std::vector<Found> found_;
};

bool has_ada_extension(const std::filesystem::path &p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".ads" || ext == ".adb";
}

} // namespace

ParsedUnit parse_unit(std::string_view path, std::string_view text) {
  return UnitParser(path, text).run();
}

Snapshot assemble(std::vector<ParsedUnit> units) {
  std::sort(units.begin(), units.end(),
            [](const ParsedUnit &a, const ParsedUnit &b) { return a.unit.path < b.unit.path; });

  Snapshot s;
  s.hash_algorithm = std::string(kHashAlgorithm);
  std::map<std::pair<std::string, UnitKind>, std::string> defined_in;
  std::vector<std::string> errors;

  for (auto &u : units) {
    const auto key = std::make_pair(u.unit.package_name, u.unit.kind);
    const char *what = u.unit.kind == UnitKind::Spec ? "spec" : "body";
    if (auto it = defined_in.find(key); it != defined_in.end()) {
      errors.push_back(u.unit.path + ": duplicate " + what + " for package " +
                       u.unit.package_name + " (already defined in " + it->second + ")");
      continue;
    }
    defined_in.emplace(key, u.unit.path);

    PackageModel &pm = s.packages[u.unit.package_name];
    pm.name = u.unit.package_name;
    if (u.unit.kind == UnitKind::Spec) {
      pm.has_spec = true;
      pm.spec_withs = std::move(u.withs);
      pm.spec_residue_hash = std::move(u.residue_hash);
    } else {
      pm.has_body = true;
      pm.body_withs = std::move(u.withs);
      pm.body_residue_hash = std::move(u.residue_hash);
      pm.subprograms = std::move(u.subprograms);
    }
  }
  if (!errors.empty()) throw TreeParseError(std::move(errors));
  return s;
}

Snapshot parse_sources(std::vector<SourceFile> files) {
  std::sort(files.begin(), files.end(),
            [](const SourceFile &a, const SourceFile &b) { return a.path < b.path; });
  std::vector<ParsedUnit> units;
  std::vector<std::string> errors;
  for (const auto &f : files) {
    try {
      units.push_back(parse_unit(f.path, f.text));
    } catch (const ParseError &e) {
      errors.push_back(e.what());
    }
  }
  if (!errors.empty()) throw TreeParseError(std::move(errors));
  return assemble(std::move(units));
}

std::vector<SourceFile> read_tree(const std::filesystem::path &root) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("not a directory: " + root.string());

  std::vector<SourceFile> files;
  for (auto it = fs::recursive_directory_iterator(root, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (!it->is_regular_file() || !has_ada_extension(it->path())) continue;
    std::ifstream in(it->path(), std::ios::binary);
    if (!in) throw IoError("cannot read " + it->path().string());
    std::ostringstream buf;
    buf << in.rdbuf();
    files.push_back(SourceFile{fs::relative(it->path(), root).generic_string(), buf.str()});
  }
  if (ec) throw IoError("cannot traverse " + root.string() + ": " + ec.message());
  std::sort(files.begin(), files.end(),
            [](const SourceFile &a, const SourceFile &b) { return a.path < b.path; });
  return files;
}

Snapshot parse_tree(const std::filesystem::path &root) { return parse_sources(read_tree(root)); }

} // namespace adaimpact
