#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsem/ciphers.hpp"

namespace vsem {

struct Record {
  std::string name;
  std::string secret;

  friend bool operator==(const Record&, const Record&) = default;
};

struct Category {
  std::string name;
  std::vector<Record> records;

  friend bool operator==(const Category&, const Category&) = default;
};

struct FileEntry {
  std::string display_name;
  std::string blob_path;  // relative to the directory holding the vault file
  std::string password;
  std::uint64_t length = 0;
  std::uint32_t crc32 = 0;  // of the original content

  friend bool operator==(const FileEntry&, const FileEntry&) = default;
};

inline constexpr std::uint16_t kStoreFormatVersion = 1;

/// In-memory vault content: named categories of records plus encrypted file
/// entries. Category names are unique, as are record names within a
/// category and file display names.
class VaultStore {
 public:
  /// Inserts or overwrites.
  void put_record(std::string_view category, std::string_view name, std::string_view secret);

  /// Throws NotFoundError.
  const std::string& get_record(std::string_view category, std::string_view name) const;

  bool remove_record(std::string_view category, std::string_view name);

  /// "category/name" for every record, in insertion order.
  std::vector<std::string> list() const;

  const std::vector<Category>& categories() const noexcept { return categories_; }
  const std::vector<FileEntry>& files() const noexcept { return files_; }

  const FileEntry* find_file(std::string_view display_name) const noexcept;
  /// Replaces an entry with the same display name; returns the old entry.
  std::optional<FileEntry> upsert_file(FileEntry entry);

  friend bool operator==(const VaultStore&, const VaultStore&) = default;

 private:
  std::vector<Category> categories_;
  std::vector<FileEntry> files_;
};

// Serialized form (all integers little-endian, str = u32 length + bytes):
//   "VSTO"  u16 version
//   u32 category count, per category: str name, u32 record count,
//       per record: str name, str secret
//   u32 file count, per file: str display name, str blob path,
//       str password, u64 original length, u32 CRC-32 of the content
//   u32 CRC-32 of every preceding byte
Bytes serialize_store(const VaultStore& store);
/// Throws CorruptError on any structural or checksum failure.
VaultStore parse_store(std::span<const std::uint8_t> bytes);

std::uint32_t content_crc32(std::span<const std::uint8_t> bytes) noexcept;

/// 16 characters from [A-Za-z0-9], drawn from a generator seeded from
/// std::random_device.
std::string generate_file_password();

/// An open vault file. Holds "<vault>.lock" for its lifetime; blobs live in
/// "<vault>.blobs/".
class Vault {
 public:
  /// Throws IoError if the path (or its lock) already exists.
  static Vault create(const std::filesystem::path& path, std::string_view master_password);
  /// Throws IoError, FormatError, AuthError or CorruptError.
  static Vault open(const std::filesystem::path& path, std::string_view master_password);

  Vault(Vault&&) noexcept;
  Vault& operator=(Vault&&) noexcept;
  Vault(const Vault&) = delete;
  Vault& operator=(const Vault&) = delete;
  ~Vault();

  VaultStore& store() noexcept { return store_; }
  const VaultStore& store() const noexcept { return store_; }

  /// Re-encrypts the whole store and atomically replaces the vault file.
  void save();

  /// Encrypts the bytes under a fresh per-file password into the blob
  /// directory and records the entry. Does not save the store.
  FileEntry add_file(std::span<const std::uint8_t> content, std::string_view display_name);
  /// Throws CorruptError if the blob is missing, fails its check block or
  /// decrypts to content of the wrong length or checksum.
  Bytes get_file(const FileEntry& entry) const;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path blob_dir() const;
  static std::filesystem::path lock_path(const std::filesystem::path& vault_path);

 private:
  Vault(std::filesystem::path path, std::string master_password);

  void release_lock() noexcept;

  std::filesystem::path path_;
  std::string master_password_;
  VaultStore store_;
  bool holds_lock_ = false;
};

}  // namespace vsem
