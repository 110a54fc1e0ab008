// Copyright 2026 The osmosis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <map>
#include <sstream>
#include <utility>

#include "osmosis/scenario.h"
#include "tokenize.h"

namespace osmosis {

namespace detail {

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    Token token;
    token.column = i + 1;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i]))) {
      if (line[i] != '"') {
        token.text += line[i++];
        continue;
      }
      std::size_t open = i++;
      bool closed = false;
      while (i < line.size()) {
        char c = line[i++];
        if (c == '"') {
          closed = true;
          break;
        }
        if (c == '\\' && i < line.size()) c = line[i++];
        token.text += c;
      }
      if (!closed) throw ParseError(line_no, open + 1, "unterminated string");
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

}  // namespace detail

namespace {

using detail::Token;
using detail::tokenize;

class Parser {
 public:
  explicit Parser(bool strict) : strict_(strict) {}

  ScenarioDoc run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      line_ = line_no;
      tokens_ = tokenize(line, line_no);
      if (!tokens_.empty()) declaration();
      start = end + 1;
    }
    if (strict_) {
      try {
        doc_.system.seal();
      } catch (const Error& e) {
        throw ParseError(line_no, 1, e.what());
      }
    } else {
      for (auto& [id, pd] : pds_) doc_.system.insert_unchecked(std::move(pd));
    }
    return std::move(doc_);
  }

 private:
  [[noreturn]] void fail(std::size_t token, const std::string& message) const {
    std::size_t column = token < tokens_.size() ? tokens_[token].column : 1;
    throw ParseError(line_, column, message);
  }

  void need(std::size_t count, const char* usage) const {
    if (tokens_.size() < count) fail(0, std::string("expected: ") + usage);
  }

  const std::string& id_at(std::size_t i) const {
    const std::string& t = tokens_[i].text;
    if (!is_valid_id(t)) fail(i, "invalid identifier '" + t + "'");
    return t;
  }

  // key=value attributes from token `first` on.
  std::map<std::string, std::string> attributes(
      std::size_t first, std::initializer_list<std::string_view> allowed) {
    std::map<std::string, std::string> out;
    for (std::size_t i = first; i < tokens_.size(); ++i) {
      const std::string& t = tokens_[i].text;
      auto eq = t.find('=');
      if (eq == std::string::npos) fail(i, "expected key=value, got '" + t + "'");
      std::string key = t.substr(0, eq);
      bool ok = false;
      for (auto a : allowed) ok = ok || key == a;
      if (!ok) fail(i, "unknown attribute '" + key + "'");
      if (!out.emplace(key, t.substr(eq + 1)).second) {
        fail(i, "duplicate attribute '" + key + "'");
      }
    }
    return out;
  }

  // Index of the `key=` token, for diagnostics.
  std::size_t attribute_token(std::string_view key) const {
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      const std::string& t = tokens_[i].text;
      if (t.size() > key.size() && t.compare(0, key.size(), key) == 0 &&
          t[key.size()] == '=') {
        return i;
      }
    }
    return 0;
  }

  ResourceId resource_ref(std::size_t i) {
    ResourceId id(id_at(i));
    if (strict_ && !doc_.system.find_resource(id)) {
      fail(i, "forward reference to undeclared resource '" + id.str() + "'");
    }
    return id;
  }

  PdId pd_ref(std::size_t i) {
    PdId id(id_at(i));
    if (strict_ && !doc_.system.find_pd(id)) {
      fail(i, "forward reference to undeclared pd '" + id.str() + "'");
    }
    return id;
  }

  // Subject PDs must be declared even in lenient mode; only the targets of
  // references go unchecked.
  Pd& lenient_pd(std::size_t i) {
    PdId id(id_at(i));
    if (!declared_pds_.contains(id)) {
      fail(i, "forward reference to undeclared pd '" + id.str() + "'");
    }
    auto it = pds_.find(id);
    if (it == pds_.end()) {
      it = pds_.emplace(id, Pd{}).first;
      it->second.id = id;
    }
    return it->second;
  }

  template <class F>
  void guarded(std::size_t token, F&& f) {
    try {
      f();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(token, e.what());
    }
  }

  void declaration() {
    const std::string& keyword = tokens_[0].text;
    if (keyword == "resource") {
      resource();
    } else if (keyword == "pd") {
      pd();
    } else if (keyword == "owns") {
      owns();
    } else if (keyword == "edge") {
      edge();
    } else if (keyword == "dir") {
      dir();
    } else if (keyword == "creator") {
      creator();
    } else if (keyword == "backing") {
      backing();
    } else if (keyword == "delta") {
      delta();
    } else if (keyword == "query") {
      query();
    } else {
      fail(0, "unknown declaration keyword '" + keyword + "'");
    }
  }

  void resource() {
    need(2, "resource ID kind=WORD class=physical|virtual [label=STRING]");
    ResourceId id(id_at(1));
    auto attrs = attributes(2, {"kind", "class", "label"});
    if (!attrs.contains("kind")) fail(0, "resource needs kind=");
    if (!attrs.contains("class")) fail(0, "resource needs class=");
    auto cls = parse_resource_class(attrs["class"]);
    if (!cls) {
      fail(attribute_token("class"), "class must be physical or virtual");
    }
    std::optional<std::string> label;
    if (auto it = attrs.find("label"); it != attrs.end()) label = it->second;
    if (doc_.system.find_resource(id)) {
      fail(1, "duplicate resource id '" + id.str() + "'");
    }
    if (strict_) {
      guarded(0, [&] {
        doc_.system.add_resource(attrs["kind"], *cls, label, id);
      });
    } else {
      doc_.system.insert_unchecked(Resource{id, attrs["kind"], *cls, label});
    }
  }

  void pd() {
    need(2, "pd ID [label=STRING]");
    Pd pd;
    pd.id = PdId(id_at(1));
    auto attrs = attributes(2, {"label"});
    if (auto it = attrs.find("label"); it != attrs.end()) pd.label = it->second;
    if (strict_) {
      if (doc_.system.find_pd(pd.id)) {
        fail(1, "duplicate pd id '" + pd.id.str() + "'");
      }
      guarded(0, [&] { doc_.system.add_pd(std::move(pd)); });
    } else {
      if (declared_pds_.contains(pd.id)) {
        fail(1, "duplicate pd id '" + pd.id.str() + "'");
      }
      declared_pds_.insert(pd.id);
      Pd& slot = lenient_pd(1);
      slot.label = pd.label;
    }
  }

  void owns() {
    need(3, "owns PDID RESID+");
    PdId pd = pd_ref(1);
    for (std::size_t i = 2; i < tokens_.size(); ++i) {
      ResourceId r = resource_ref(i);
      if (strict_) {
        guarded(i, [&] { doc_.system.add_owned(pd, r); });
      } else {
        lenient_pd(1).res.insert(r);
      }
    }
  }

  void edge() {
    need(4, "edge topology|mapping|allocation RESID RESID");
    if (tokens_.size() > 4) fail(4, "unexpected token");
    auto kind = parse_relation_kind(tokens_[1].text);
    if (!kind) fail(1, "edge kind must be topology, mapping or allocation");
    ResourceId from = resource_ref(2);
    ResourceId to = resource_ref(3);
    if (strict_) {
      guarded(2, [&] { doc_.system.add_edge(from, to, *kind); });
    } else {
      doc_.system.insert_unchecked(Edge{from, to, *kind});
    }
  }

  void dir() {
    need(4, "dir PDID WORD PDID");
    if (tokens_.size() > 4) fail(4, "unexpected token");
    PdId pd = pd_ref(1);
    std::string kind = id_at(2);
    PdId provider = pd_ref(3);
    if (strict_) {
      guarded(0, [&] { doc_.system.set_directory_entry(pd, kind, provider); });
    } else {
      lenient_pd(1).rdir.entries[kind] = provider;
    }
  }

  void creator() {
    need(3, "creator PDID PDID");
    if (tokens_.size() > 3) fail(3, "unexpected token");
    PdId pd = pd_ref(1);
    PdId creator = pd_ref(2);
    if (strict_) {
      guarded(0, [&] { doc_.system.set_creator(pd, creator); });
    } else {
      lenient_pd(1).rdir.creator = creator;
    }
  }

  void backing() {
    need(4, "backing PDID WORD WORD+");
    PdId pd = pd_ref(1);
    std::string kind = id_at(2);
    std::vector<std::string> kinds;
    for (std::size_t i = 3; i < tokens_.size(); ++i) kinds.push_back(id_at(i));
    if (strict_) {
      guarded(0, [&] { doc_.system.set_backing(pd, kind, kinds); });
    } else {
      lenient_pd(1).backing[kind] = kinds;
    }
  }

  void delta() {
    need(3, "delta NAME RESID+");
    std::string name = id_at(1);
    if (doc_.deltas.contains(name)) fail(1, "duplicate delta '" + name + "'");
    ResourceSet members;
    for (std::size_t i = 2; i < tokens_.size(); ++i) {
      members.insert(resource_ref(i));
    }
    doc_.deltas.emplace(name, std::move(members));
  }

  void query() {
    need(3, "query NAME QUERYEXPR");
    QueryStanza stanza;
    stanza.name = id_at(1);
    stanza.line = line_;
    for (const auto& q : doc_.queries) {
      if (q.name == stanza.name) fail(1, "duplicate query '" + q.name + "'");
    }
    for (std::size_t i = 2; i < tokens_.size(); ++i) {
      stanza.args.push_back(tokens_[i].text);
    }
    doc_.queries.push_back(std::move(stanza));
  }

  bool strict_;
  ScenarioDoc doc_;
  std::size_t line_ = 0;
  std::vector<Token> tokens_;
  // Lenient mode only.
  std::map<PdId, Pd> pds_;
  std::set<PdId> declared_pds_;
};

}  // namespace

ScenarioDoc parse_scenario(std::string_view text) {
  return Parser(/*strict=*/true).run(text);
}

ScenarioDoc load_scenario_lenient(std::string_view text) {
  return Parser(/*strict=*/false).run(text);
}

}  // namespace osmosis
