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

#ifndef MLSYL_ERRORS_HPP_
#define MLSYL_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlsyl {

// Base class for all toolkit errors. Subclasses correspond to the failure
// modes named in the public API contracts.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input bytes are not valid UTF-8.
class InvalidEncodingError : public Error {
 public:
  explicit InvalidEncodingError(std::size_t byte_offset)
      : Error("invalid UTF-8 at byte offset " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// No syllable rule matches at some position of a Malayalam word.
class UnsegmentableWordError : public Error {
 public:
  UnsegmentableWordError(std::string word, std::size_t codepoint_offset)
      : Error("unsegmentable word '" + word + "' at codepoint offset " +
              std::to_string(codepoint_offset)),
        word_(std::move(word)),
        codepoint_offset_(codepoint_offset) {}
  const std::string& word() const { return word_; }
  std::size_t codepoint_offset() const { return codepoint_offset_; }

 private:
  std::string word_;
  std::size_t codepoint_offset_;
};

// A token contains a codepoint with no phone table mapping.
class UnmappedCodepointError : public Error {
 public:
  UnmappedCodepointError(std::string token, char32_t codepoint)
      : Error("no phone mapping for U+" + HexCode(codepoint) + " in token '" +
              token + "'"),
        token_(std::move(token)),
        codepoint_(codepoint) {}
  const std::string& token() const { return token_; }
  char32_t codepoint() const { return codepoint_; }

 private:
  static std::string HexCode(char32_t cp);
  std::string token_;
  char32_t codepoint_;
};

// A structured text file (table, lexicon) has a syntactically bad line.
class MalformedLineError : public Error {
 public:
  MalformedLineError(const std::string& file, std::size_t line_number,
                     const std::string& detail)
      : Error(file + ":" + std::to_string(line_number) + ": " + detail),
        line_number_(line_number) {}
  std::size_t line_number() const { return line_number_; }

 private:
  std::size_t line_number_;
};

// A lexicon file declares the same token twice.
class DuplicateTokenError : public Error {
 public:
  DuplicateTokenError(const std::string& file, std::size_t line_number,
                      const std::string& token)
      : Error(file + ":" + std::to_string(line_number) + ": duplicate token '" +
              token + "'"),
        line_number_(line_number) {}
  std::size_t line_number() const { return line_number_; }

 private:
  std::size_t line_number_;
};

class EmptyBaseError : public Error {
 public:
  EmptyBaseError() : Error("word lexicon base set is empty") {}
};

class InvalidOrderError : public Error {
 public:
  explicit InvalidOrderError(int order)
      : Error("invalid n-gram order " + std::to_string(order)) {}
};

class DegenerateCorpusError : public Error {
 public:
  DegenerateCorpusError() : Error("corpus has an empty vocabulary") {}
};

class EmptyCorpusError : public Error {
 public:
  EmptyCorpusError() : Error("corpus is empty") {}
};

// An ARPA model file is truncated or syntactically invalid.
class MalformedArpaError : public Error {
 public:
  MalformedArpaError(std::size_t line_number, const std::string& detail)
      : Error("ARPA line " + std::to_string(line_number) + ": " + detail),
        line_number_(line_number) {}
  std::size_t line_number() const { return line_number_; }

 private:
  std::size_t line_number_;
};

class EmptyReferenceError : public Error {
 public:
  EmptyReferenceError() : Error("reference has no words") {}
};

class NoTokenizableWordsError : public Error {
 public:
  NoTokenizableWordsError() : Error("corpus has no tokenizable words") {}
};

// Bad command line flags, config keys, or unreadable input paths.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace mlsyl

#endif  // MLSYL_ERRORS_HPP_
