#pragma once

#include <stdexcept>
#include <string>

namespace pqg {

// Every library error carries a short machine code next to the message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

}  // namespace pqg
