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

#include "osmosis/script.h"

#include <charconv>
#include <map>
#include <set>

#include "tokenize.h"

namespace osmosis {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    if (end > start) out.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::pair<std::string, std::string> split_pair(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected KIND:PD, got '" + text + "'");
  }
  return {text.substr(0, colon), text.substr(colon + 1)};
}

ResourcePolicy parse_policy(const std::string& text) {
  if (text == "share") return ResourcePolicy::kShare;
  if (text == "copy") return ResourcePolicy::kCopy;
  if (text == "exclude") return ResourcePolicy::kExclude;
  throw Error(ErrorCode::kInvalidArgument,
              "resource policy must be share, copy or exclude, got '" + text +
                  "'");
}

DirectoryPolicy parse_directory_policy(const std::string& text) {
  if (text == "keep") return DirectoryPolicy::keep();
  if (text == "drop") return DirectoryPolicy::drop();
  if (text.starts_with("retarget:")) {
    return DirectoryPolicy::retarget(PdId(text.substr(9)));
  }
  throw Error(ErrorCode::kInvalidArgument,
              "directory policy must be keep, drop or retarget:PD, got '" +
                  text + "'");
}

class Interpreter {
 public:
  Interpreter(System& sys, const std::function<void(const Edge&)>& on_edge)
      : sys_(sys), on_edge_(on_edge) {}

  void line(const std::vector<detail::Token>& tokens) {
    tokens_ = &tokens;
    std::set<Edge> before = sys_.edges();
    const std::string& verb = tokens[0].text;
    if (verb == "newpd") {
      newpd();
    } else if (verb == "alloc") {
      arity(5, "alloc RESID OWNER PARENT KIND");
      allocate_from(sys_, PdId(arg(2)), ResourceId(arg(3)), arg(4),
                    ResourceId(arg(1)));
    } else if (verb == "request") {
      arity(4, "request RESID REQUESTER KIND");
      request_resource(sys_, PdId(arg(2)), arg(3), ResourceId(arg(1)));
    } else if (verb == "map") {
      arity(4, "map PROVIDER VIRTUAL PHYSICAL");
      map_resource(sys_, PdId(arg(1)), ResourceId(arg(2)), ResourceId(arg(3)));
    } else if (verb == "partition") {
      arity(4, "partition OWNER PARENT N");
      std::size_t parts = 0;
      const std::string& n = arg(3);
      auto [ptr, ec] = std::from_chars(n.data(), n.data() + n.size(), parts);
      if (ec != std::errc() || ptr != n.data() + n.size()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "partition count must be a non-negative integer");
      }
      partition(sys_, PdId(arg(1)), ResourceId(arg(2)), parts);
    } else if (verb == "clone") {
      clone();
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown script verb '" + verb + "'");
    }
    if (on_edge_) {
      for (const Edge& e : sys_.edges()) {
        if (!before.contains(e)) on_edge_(e);
      }
    }
  }

 private:
  const std::string& arg(std::size_t i) const { return (*tokens_)[i].text; }

  void arity(std::size_t n, const char* usage) const {
    if (tokens_->size() != n) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("usage: ") + usage);
    }
  }

  // Splits tokens from `first` into positional operands and key=value
  // options.
  std::vector<std::string> operands(std::size_t first,
                                    std::map<std::string, std::string>& opts) {
    std::vector<std::string> out;
    for (std::size_t i = first; i < tokens_->size(); ++i) {
      const std::string& t = arg(i);
      auto eq = t.find('=');
      if (eq == std::string::npos) {
        out.push_back(t);
      } else if (!opts.emplace(t.substr(0, eq), t.substr(eq + 1)).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "duplicate option '" + t.substr(0, eq) + "'");
      }
    }
    return out;
  }

  void newpd() {
    if (tokens_->size() < 2) {
      throw Error(ErrorCode::kInvalidArgument,
                  "usage: newpd PDID [creator=PD] [inherit=PD] "
                  "[dir=KIND:PD,...] [label=S] RESID*");
    }
    std::map<std::string, std::string> opts;
    auto ids = operands(2, opts);
    ResourceDirectory directory;
    std::optional<PdId> creator;
    std::optional<std::string> label;
    for (const auto& [key, value] : opts) {
      if (key == "inherit") {
        directory = sys_.pd(PdId(value)).rdir;
      } else if (key == "creator") {
        creator = PdId(value);
      } else if (key == "label") {
        label = value;
      } else if (key != "dir") {
        throw Error(ErrorCode::kInvalidArgument,
                    "unknown newpd option '" + key + "'");
      }
    }
    if (auto it = opts.find("dir"); it != opts.end()) {
      for (const auto& entry : split(it->second, ',')) {
        auto [kind, pd] = split_pair(entry);
        directory.entries[kind] = PdId(pd);
      }
    }
    ResourceSet res;
    for (const auto& id : ids) res.insert(ResourceId(id));
    new_pd(sys_, res, std::move(directory), creator, PdId(arg(1)),
           std::move(label));
  }

  void clone() {
    if (tokens_->size() < 3) {
      throw Error(ErrorCode::kInvalidArgument,
                  "usage: clone NEWPD SOURCE [options]");
    }
    std::map<std::string, std::string> opts;
    auto extra = operands(3, opts);
    if (!extra.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unexpected clone operand '" + extra.front() + "'");
    }
    clone_pd(sys_, PdId(arg(2)), parse_isolation_function(opts), PdId(arg(1)));
  }

  System& sys_;
  const std::function<void(const Edge&)>& on_edge_;
  const std::vector<detail::Token>* tokens_ = nullptr;
};

}  // namespace

IsolationFunction parse_isolation_function(
    const std::map<std::string, std::string>& options) {
  IsolationFunction fn;
  if (auto it = options.find("fn"); it != options.end()) {
    if (it->second == "share-all") {
      fn = IsolationFunction::share_all();
    } else if (it->second == "thread") {
      fn = IsolationFunction::thread_with_private_stack();
    } else if (it->second == "process") {
      fn = IsolationFunction::process();
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown isolation function '" + it->second + "'");
    }
  }
  for (const auto& [key, value] : options) {
    if (key == "fn") continue;
    if (key == "share" || key == "copy" || key == "exclude") {
      for (const auto& kind : split(value, ',')) {
        fn.resource_policy[kind] = parse_policy(key);
      }
    } else if (key == "default") {
      fn.default_resource_policy = parse_policy(value);
    } else if (key == "keep" || key == "drop") {
      for (const auto& kind : split(value, ',')) {
        fn.directory_policy[kind] = parse_directory_policy(key);
      }
    } else if (key == "retarget") {
      for (const auto& entry : split(value, ',')) {
        auto [kind, pd] = split_pair(entry);
        fn.directory_policy[kind] = DirectoryPolicy::retarget(PdId(pd));
      }
    } else if (key == "dir-default") {
      fn.default_directory_policy = parse_directory_policy(value);
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown clone option '" + key + "'");
    }
  }
  return fn;
}

void run_script(System& sys, std::string_view script,
                const std::function<void(const Edge&)>& on_edge) {
  Interpreter interp(sys, on_edge);
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= script.size()) {
    std::size_t end = script.find('\n', start);
    if (end == std::string_view::npos) end = script.size();
    std::string_view line = script.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = end + 1;
    try {
      auto tokens = detail::tokenize(line, line_no);
      if (tokens.empty()) continue;
      interp.line(tokens);
    } catch (const Error& e) {
      throw ScriptError(line_no, e.code(), e.what());
    }
  }
}

}  // namespace osmosis
