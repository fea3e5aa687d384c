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

#ifndef MLSYL_UTF8_HPP_
#define MLSYL_UTF8_HPP_

#include <string>
#include <string_view>

namespace mlsyl {

// Decodes UTF-8 bytes to scalar values. Throws InvalidEncodingError on
// malformed sequences (overlong forms, surrogates, truncation).
std::u32string DecodeUtf8(std::string_view bytes);

// Returns true iff bytes decode cleanly.
bool IsValidUtf8(std::string_view bytes);

std::string EncodeUtf8(std::u32string_view codepoints);
void AppendUtf8(std::string* out, char32_t cp);

}  // namespace mlsyl

#endif  // MLSYL_UTF8_HPP_
