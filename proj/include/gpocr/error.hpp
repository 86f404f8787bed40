#pragma once

#include <stdexcept>
#include <string>

namespace gpocr {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct FileNotFound : Error {
    explicit FileNotFound(const std::string& path) : Error("file not found: " + path) {}
};

struct MalformedImage : Error {
    explicit MalformedImage(const std::string& msg) : Error("malformed image: " + msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("i/o error: " + msg) {}
};

struct ImageTooSmall : Error {
    explicit ImageTooSmall(const std::string& msg) : Error("image too small: " + msg) {}
};

struct DuplicateCoordinates : Error {
    DuplicateCoordinates() : Error("duplicate sample coordinates in window") {}
};

struct NotPositiveDefinite : Error {
    NotPositiveDefinite() : Error("covariance matrix not positive definite after jitter escalation") {}
};

struct EngineNotFound : Error {
    explicit EngineNotFound(const std::string& what) : Error("OCR engine not found: " + what) {}
};

struct EngineTimeout : Error {
    explicit EngineTimeout(const std::string& what) : Error("OCR engine timed out: " + what) {}
};

struct EngineFailure : Error {
    explicit EngineFailure(const std::string& what) : Error("OCR engine failed: " + what) {}
};

struct EmptyGroundTruth : Error {
    EmptyGroundTruth() : Error("ground-truth transcript has no tokens") {}
};

} // namespace gpocr
