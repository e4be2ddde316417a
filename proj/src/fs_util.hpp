#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <system_error>

#include "jndmix/errors.hpp"

namespace jndmix::detail {

struct FileHandle {
    FILE* fp = nullptr;
    FileHandle(const std::filesystem::path& path, const char* mode)
        : fp(std::fopen(path.c_str(), mode)) {}
    ~FileHandle() {
        if (fp) std::fclose(fp);
    }
    FileHandle(const FileHandle&) = delete;
    FileHandle& operator=(const FileHandle&) = delete;
};

// Writes go to a sibling temp file first, so a failure never leaves a
// partial file at the destination.
class AtomicWriter {
public:
    explicit AtomicWriter(const std::filesystem::path& target)
        : target_(target), temp_(target.string() + ".tmp"), file_(temp_, "wb") {
        if (!file_.fp) throw IoError("cannot open for writing: " + temp_.string());
    }
    ~AtomicWriter() {
        if (!committed_) {
            std::error_code ec;
            std::filesystem::remove(temp_, ec);
        }
    }
    FILE* fp() { return file_.fp; }

    void write(const void* data, std::size_t size) {
        if (std::fwrite(data, 1, size, file_.fp) != size)
            throw IoError("write failed: " + temp_.string());
    }
    void write(const std::string& text) { write(text.data(), text.size()); }

    void commit() {
        if (std::fflush(file_.fp) != 0) throw IoError("write failed: " + temp_.string());
        std::fclose(file_.fp);
        file_.fp = nullptr;
        std::error_code ec;
        std::filesystem::rename(temp_, target_, ec);
        if (ec)
            throw IoError("cannot rename " + temp_.string() + " to " + target_.string());
        committed_ = true;
    }

private:
    std::filesystem::path target_;
    std::filesystem::path temp_;
    FileHandle file_;
    bool committed_ = false;
};

} // namespace jndmix::detail
