#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexalign {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input data: malformed files, integrity violations, unknown entities.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A row-level problem while reading a table file.
class IngestError : public DataError {
 public:
  IngestError(std::string file, std::size_t line, const std::string& what)
      : DataError(file + ":" + std::to_string(line) + ": " + what),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// A language code that the dictionary does not know.
class UnknownLanguage : public Error {
 public:
  explicit UnknownLanguage(const std::string& code)
      : Error("unknown language code '" + code + "'"), code_(code) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Syntax errors carry a 1-based position in the input text.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column),
        message_(what) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

class UnknownEntity : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace lexalign
