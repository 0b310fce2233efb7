#pragma once

#include <stdexcept>
#include <string>

namespace texroi {

/// Error type thrown by every texroi operation on contract violation.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct Point2d {
    double x = 0.0;
    double y = 0.0;
};

}  // namespace texroi
