#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tweetmine {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class FileNotFound : public Error {
 public:
  explicit FileNotFound(const std::string& path)
      : Error("FileNotFound: " + path), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t line, const std::string& reason)
      : Error("MalformedRecord: line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class DuplicateId : public Error {
 public:
  explicit DuplicateId(const std::string& id) : Error("DuplicateId: " + id), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class InconsistentSpec : public Error {
 public:
  explicit InconsistentSpec(const std::string& what) : Error("InconsistentSpec: " + what) {}
};

// Raised when an analytical selection is empty (no messages, transactions or vertices).
class EmptySelection : public Error {
 public:
  using Error::Error;
};

class EmptyWindow : public EmptySelection {
 public:
  EmptyWindow() : EmptySelection("EmptyWindow: no messages in the time window") {}
};

class EmptyCorpus : public EmptySelection {
 public:
  EmptyCorpus() : EmptySelection("EmptyCorpus: corpus has no messages") {}
};

class EmptyTransactionSet : public EmptySelection {
 public:
  EmptyTransactionSet() : EmptySelection("EmptyTransactionSet: no transactions") {}
};

class EmptyGraph : public EmptySelection {
 public:
  EmptyGraph() : EmptySelection("EmptyGraph: graph has no vertices") {}
};

class UnknownItem : public Error {
 public:
  explicit UnknownItem(const std::string& item) : Error("UnknownItem: " + item) {}
};

class UncoveredVertex : public Error {
 public:
  explicit UncoveredVertex(const std::string& v) : Error("UncoveredVertex: " + v) {}
};

}  // namespace tweetmine
