#pragma once

#include <stdexcept>
#include <string>

namespace orbiloop {

/// Input document does not match its schema. `path` is a JSON pointer.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string path, const std::string& what)
        : std::runtime_error(what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// An operation was called outside its contract. `name` identifies the violated precondition.
class PreconditionError : public std::runtime_error {
public:
    PreconditionError(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// A computed quantity violated an invariant that holds by construction.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace orbiloop
