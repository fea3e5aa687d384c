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

#ifndef MLSYL_SRC_TABLE_IO_HPP_
#define MLSYL_SRC_TABLE_IO_HPP_

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "mlsyl/errors.hpp"

namespace mlsyl::detail {

// Calls fn(line_no, key, value) for every data row of a tab separated table.
// Blank lines and '#' comments are skipped; '\r' is stripped.
template <typename Fn>
void ForEachTableRow(std::string_view text, const std::string& origin,
                     Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw MalformedLineError(origin, line_no, "expected key<TAB>value");
    fn(line_no, line.substr(0, tab), line.substr(tab + 1));
  }
}

// Parses a "U+XXXX" literal; returns false on any malformed input.
inline bool ParseCodepointLiteral(std::string_view code, char32_t* out) {
  if (code.size() < 3 || code.substr(0, 2) != "U+") return false;
  char32_t cp = 0;
  for (char c : code.substr(2)) {
    int digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
    else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else return false;
    cp = cp * 16 + static_cast<char32_t>(digit);
  }
  *out = cp;
  return true;
}

// Slurps a whole file; `what` names the table kind for the error message.
inline std::string ReadFileText(const std::string& path,
                                const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + what + ": " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace mlsyl::detail

#endif  // MLSYL_SRC_TABLE_IO_HPP_
