#pragma once

#include <stdexcept>
#include <string>

namespace cov3d {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed file contents (bad magic, size mismatch, bad delimited row).
class FormatError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Raised by segment_lungs when the kept mask covers < 0.1% of the volume.
class SegmentationEmpty : public Error {
public:
    using Error::Error;
};

}  // namespace cov3d
