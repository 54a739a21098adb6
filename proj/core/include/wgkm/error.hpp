#pragma once

#include <stdexcept>
#include <string>

namespace wgkm {

/** Error category, mapped onto CLI exit codes (usage=1, computation=2, verification=3). */
enum class ErrorKind { Usage, Computation, Verification };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
    if (!cond) throw Error(kind, msg);
}

/** Internal consistency violation: something the library itself guarantees failed. */
inline void internal_check(bool cond, const std::string& msg) {
    if (!cond) throw Error(ErrorKind::Computation, "internal invariant violated: " + msg);
}

} // namespace wgkm
