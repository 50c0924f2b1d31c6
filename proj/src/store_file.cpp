#include "causalstore/store_file.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <utility>

#include "causalstore/error.hpp"
#include "causalstore/ntriples.hpp"

namespace causalstore {

namespace fs = std::filesystem;

std::string LogRecord::to_line() const {
    std::string out;
    out += static_cast<char>(op);
    out += ' ';
    out += triple.to_ntriples();
    return out;
}

LogRecord LogRecord::parse(std::string_view line, std::size_t line_no) {
    if (line.size() < 2 || (line[0] != 'A' && line[0] != 'R') || line[1] != ' ')
        throw ParseError("log record must start with 'A ' or 'R '", line_no, 1);
    auto op = static_cast<Op>(line[0]);
    return LogRecord{op, parse_ntriples_line(line.substr(2), line_no)};
}

namespace {

std::string errno_text(const std::string& what, const fs::path& p) {
    return what + " " + p.string() + ": " + std::strerror(errno);
}

std::string fresh_contents() {
    std::string s(StoreFile::kHeader);
    s += '\n';
    s += StoreFile::kLogMarker;
    s += '\n';
    return s;
}

void fsync_directory(const fs::path& dir) {
    int fd = ::open(dir.empty() ? "." : dir.c_str(), O_RDONLY | O_DIRECTORY);
    if (fd < 0) return;
    ::fsync(fd);
    ::close(fd);
}

void write_fd(int fd, std::string_view bytes, const fs::path& p) {
    while (!bytes.empty()) {
        ssize_t n = ::write(fd, bytes.data(), bytes.size());
        if (n < 0) {
            if (errno == EINTR) continue;
            throw StorageError(errno_text("write failed on", p));
        }
        bytes.remove_prefix(static_cast<std::size_t>(n));
    }
}

// Writes `contents` to `path` atomically (temp file, fsync, rename).
void replace_file(const fs::path& path, std::string_view contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
    if (fd < 0) throw StorageError(errno_text("cannot create", tmp));
    try {
        write_fd(fd, contents, tmp);
    } catch (...) {
        ::close(fd);
        ::unlink(tmp.c_str());
        throw;
    }
    if (::fsync(fd) != 0) {
        ::close(fd);
        throw StorageError(errno_text("fsync failed on", tmp));
    }
    ::close(fd);
    if (::rename(tmp.c_str(), path.c_str()) != 0) throw StorageError(errno_text("cannot rename onto", path));
    fsync_directory(path.parent_path());
}

struct ParsedFile {
    TripleStore store;
    RecoveryReport report;
    std::size_t valid_bytes = 0;
    bool rewrite_fresh = false;
};

ParsedFile parse_contents(const std::string& data, const fs::path& path) {
    ParsedFile out;
    const std::string fresh = fresh_contents();
    if (data.size() < fresh.size() && fresh.compare(0, data.size(), data) == 0) {
        // Empty or interrupted while the initial header was being written.
        out.rewrite_fresh = true;
        out.report.bytes_dropped = data.size();
        return out;
    }

    std::size_t pos = 0;
    std::size_t line_no = 0;
    auto next_line = [&](std::string_view& line) -> bool {
        auto nl = data.find('\n', pos);
        if (nl == std::string::npos) return false;
        line = std::string_view(data).substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        return true;
    };

    std::string_view line;
    if (!next_line(line) || line != StoreFile::kHeader)
        throw StorageError(path.string() + " is not a causalstore-v1 file");

    bool saw_marker = false;
    while (next_line(line)) {
        if (line == StoreFile::kLogMarker) {
            saw_marker = true;
            break;
        }
        try {
            out.store.insert(parse_ntriples_line(line, line_no));
        } catch (const Error& e) {
            throw StorageError(path.string() + ": corrupt snapshot: " + e.what());
        }
        ++out.report.snapshot_triples;
    }
    if (!saw_marker) throw StorageError(path.string() + ": corrupt snapshot: missing " + std::string(StoreFile::kLogMarker));

    out.valid_bytes = pos;
    bool damaged = false;
    while (pos < data.size()) {
        auto nl = data.find('\n', pos);
        if (nl == std::string::npos) {
            ++out.report.records_dropped;  // unterminated tail
            break;
        }
        std::string_view rec_line = std::string_view(data).substr(pos, nl - pos);
        ++line_no;
        pos = nl + 1;
        if (damaged) {
            ++out.report.records_dropped;
            continue;
        }
        try {
            auto rec = LogRecord::parse(rec_line, line_no);
            if (rec.op == LogRecord::Op::Assert) out.store.insert(rec.triple);
            else out.store.erase(rec.triple);
            ++out.report.records_replayed;
            out.valid_bytes = pos;
        } catch (const Error&) {
            damaged = true;
            ++out.report.records_dropped;
        }
    }
    out.report.bytes_dropped = data.size() - out.valid_bytes;
    return out;
}

}  // namespace

OpenedStore StoreFile::open(const fs::path& path, OpenMode mode) {
    fs::path parent = path.parent_path();
    if (!parent.empty() && !fs::is_directory(parent))
        throw StorageError("parent directory does not exist: " + parent.string());

    StoreFile file(path, mode);
    if (mode == OpenMode::Exclusive) {
        fs::path lock_path = path;
        lock_path += ".lock";
        file.lock_fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
        if (file.lock_fd_ < 0) throw StorageError(errno_text("cannot open lock file", lock_path));
        if (::flock(file.lock_fd_, LOCK_EX | LOCK_NB) != 0) {
            if (errno == EWOULDBLOCK) throw LockError("store is locked by another exclusive holder: " + path.string());
            throw StorageError(errno_text("cannot lock", lock_path));
        }
    }

    std::string data;
    bool exists = fs::exists(path);
    if (exists) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw StorageError("cannot read " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        data = std::move(buf).str();
    }

    ParsedFile parsed = parse_contents(data, path);

    if (mode == OpenMode::Exclusive) {
        if (parsed.rewrite_fresh) {
            replace_file(path, fresh_contents());
            parsed.valid_bytes = fresh_contents().size();
        } else if (parsed.valid_bytes < data.size()) {
            if (::truncate(path.c_str(), static_cast<off_t>(parsed.valid_bytes)) != 0)
                throw StorageError(errno_text("cannot truncate damaged log of", path));
        }
        file.fd_ = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CLOEXEC);
        if (file.fd_ < 0) throw StorageError(errno_text("cannot open for append", path));
        if (::fsync(file.fd_) != 0) throw StorageError(errno_text("fsync failed on", path));
        file.size_ = parsed.valid_bytes;
    }

    return OpenedStore{std::move(file), std::move(parsed.store), parsed.report};
}

StoreFile::StoreFile(StoreFile&& other) noexcept
    : path_(std::move(other.path_)),
      mode_(other.mode_),
      fd_(std::exchange(other.fd_, -1)),
      lock_fd_(std::exchange(other.lock_fd_, -1)),
      batching_(other.batching_),
      size_(other.size_) {}

StoreFile& StoreFile::operator=(StoreFile&& other) noexcept {
    if (this != &other) {
        close();
        path_ = std::move(other.path_);
        mode_ = other.mode_;
        fd_ = std::exchange(other.fd_, -1);
        lock_fd_ = std::exchange(other.lock_fd_, -1);
        batching_ = other.batching_;
        size_ = other.size_;
    }
    return *this;
}

StoreFile::~StoreFile() { close(); }

void StoreFile::close() noexcept {
    if (fd_ >= 0) {
        if (batching_) ::fsync(fd_);
        ::close(fd_);
        fd_ = -1;
    }
    if (lock_fd_ >= 0) {
        ::flock(lock_fd_, LOCK_UN);
        ::close(lock_fd_);
        lock_fd_ = -1;
    }
}

void StoreFile::require_writable(const char* what) const {
    if (mode_ != OpenMode::Exclusive) throw StorageError(std::string(what) + " refused: store opened in shared mode");
    if (fd_ < 0) throw StorageError(std::string(what) + " refused: store file is closed");
}

void StoreFile::write_all(std::string_view bytes) {
    try {
        write_fd(fd_, bytes, path_);
    } catch (const StorageError&) {
        // Drop any partial record so the log stays parseable for a retry.
        if (::ftruncate(fd_, static_cast<off_t>(size_)) != 0) { /* reported by the rethrow */ }
        throw;
    }
    size_ += bytes.size();
}

void StoreFile::commit(std::span<const LogRecord> records) {
    if (records.empty()) return;
    require_writable("commit");
    std::string buf;
    for (const auto& r : records) {
        buf += r.to_line();
        buf += '\n';
    }
    write_all(buf);
    if (!batching_ && ::fdatasync(fd_) != 0) throw StorageError(errno_text("fdatasync failed on", path_));
}

void StoreFile::commit(const std::vector<Triple>& asserts, const std::vector<Triple>& retracts) {
    std::vector<LogRecord> records;
    records.reserve(asserts.size() + retracts.size());
    for (const auto& t : retracts) records.push_back({LogRecord::Op::Retract, t});
    for (const auto& t : asserts) records.push_back({LogRecord::Op::Assert, t});
    commit(records);
}

void StoreFile::flush() {
    if (fd_ >= 0 && ::fsync(fd_) != 0) throw StorageError(errno_text("fsync failed on", path_));
}

void StoreFile::compact(const TripleStore& store) {
    require_writable("compact");
    std::string contents(kHeader);
    contents += '\n';
    contents += store.to_ntriples();
    contents += kLogMarker;
    contents += '\n';
    replace_file(path_, contents);
    int fd = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CLOEXEC);
    if (fd < 0) throw StorageError(errno_text("cannot reopen after compaction", path_));
    ::close(fd_);
    fd_ = fd;
    size_ = contents.size();
}

}  // namespace causalstore
