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

#ifndef OSMOSIS_IDS_H_
#define OSMOSIS_IDS_H_

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace osmosis {

// String token tagged by what it names, so a PdId cannot be passed where a
// ResourceId is expected.
template <class Tag>
class Id {
 public:
  Id() = default;
  explicit Id(std::string value) : value_(std::move(value)) {}

  const std::string& str() const { return value_; }
  bool empty() const { return value_.empty(); }

  friend auto operator<=>(const Id&, const Id&) = default;
  friend bool operator==(const Id&, const Id&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Id& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

struct ResourceTag {};
struct PdTag {};

using ResourceId = Id<ResourceTag>;
using PdId = Id<PdTag>;

// [A-Za-z0-9_.-]+
bool is_valid_id(std::string_view token);

}  // namespace osmosis

template <class Tag>
struct std::hash<osmosis::Id<Tag>> {
  std::size_t operator()(const osmosis::Id<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

#endif  // OSMOSIS_IDS_H_
