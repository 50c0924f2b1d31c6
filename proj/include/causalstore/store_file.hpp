#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causalstore/term.hpp"
#include "causalstore/triple_store.hpp"

namespace causalstore {

// One line of the log section: `A <ntriples>` or `R <ntriples>`.
struct LogRecord {
    enum class Op : char { Assert = 'A', Retract = 'R' };

    Op op;
    Triple triple;

    std::string to_line() const;
    static LogRecord parse(std::string_view line, std::size_t line_no);
};

enum class OpenMode { Exclusive, Shared };

struct RecoveryReport {
    std::size_t snapshot_triples = 0;
    std::size_t records_replayed = 0;
    // Log records discarded because they (or a record before them) failed to
    // parse, counting a trailing unterminated line as one record.
    std::size_t records_dropped = 0;
    std::size_t bytes_dropped = 0;
};

class StoreFile;

struct OpenedStore;

// Durable single-file home of a TripleStore.
//
// Layout: line `causalstore-v1`, the sorted canonical N-Triples snapshot,
// line `%%LOG`, then LF-terminated log records. Exclusive handles hold an
// advisory lock on `<path>.lock` for their lifetime and are the only ones that
// write. Shared handles see the state as of open time and never write.
class StoreFile {
public:
    static constexpr std::string_view kHeader = "causalstore-v1";
    static constexpr std::string_view kLogMarker = "%%LOG";

    // Opens (or, for exclusive mode, creates) the store at `path` and loads
    // its contents. A damaged log tail is dropped and reported; an exclusive
    // open also truncates it on disk. Throws LockError if another exclusive
    // holder exists and StorageError on unreadable files.
    static OpenedStore open(const std::filesystem::path& path, OpenMode mode);

    StoreFile(StoreFile&& other) noexcept;
    StoreFile& operator=(StoreFile&& other) noexcept;
    StoreFile(const StoreFile&) = delete;
    StoreFile& operator=(const StoreFile&) = delete;
    ~StoreFile();

    // Appends records and, unless batching, flushes them to stable storage
    // before returning. An empty batch leaves the file untouched.
    void commit(std::span<const LogRecord> records);
    // Retracts are written before asserts.
    void commit(const std::vector<Triple>& asserts, const std::vector<Triple>& retracts);

    // Rewrites the file as snapshot(store) with an empty log. Exclusive only.
    void compact(const TripleStore& store);

    // Batching skips the per-commit fsync; flush() forces one.
    void set_batching(bool on) noexcept { batching_ = on; }
    bool batching() const noexcept { return batching_; }
    void flush();

    OpenMode mode() const noexcept { return mode_; }
    bool writable() const noexcept { return mode_ == OpenMode::Exclusive; }
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    StoreFile(std::filesystem::path path, OpenMode mode) : path_(std::move(path)), mode_(mode) {}

    void require_writable(const char* what) const;
    void write_all(std::string_view bytes);
    void close() noexcept;

    std::filesystem::path path_;
    OpenMode mode_;
    int fd_ = -1;
    int lock_fd_ = -1;
    bool batching_ = false;
    std::size_t size_ = 0;
};

struct OpenedStore {
    StoreFile file;
    TripleStore store;
    RecoveryReport recovery;
};

}  // namespace causalstore
