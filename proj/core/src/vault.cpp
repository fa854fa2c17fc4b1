#include "vsem/vault.hpp"

#include <fcntl.h>
#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <random>

#include "vsem/container.hpp"
#include "vsem/error.hpp"
#include "vsem/file_io.hpp"

namespace vsem {

namespace fs = std::filesystem;

void VaultStore::put_record(std::string_view category, std::string_view name,
                            std::string_view secret) {
  auto cat = std::find_if(categories_.begin(), categories_.end(),
                          [&](const Category& c) { return c.name == category; });
  if (cat == categories_.end()) {
    categories_.push_back({std::string(category), {}});
    cat = std::prev(categories_.end());
  }
  auto rec = std::find_if(cat->records.begin(), cat->records.end(),
                          [&](const Record& r) { return r.name == name; });
  if (rec == cat->records.end()) {
    cat->records.push_back({std::string(name), std::string(secret)});
  } else {
    rec->secret = std::string(secret);
  }
}

const std::string& VaultStore::get_record(std::string_view category, std::string_view name) const {
  for (const auto& c : categories_) {
    if (c.name != category) continue;
    for (const auto& r : c.records) {
      if (r.name == name) return r.secret;
    }
  }
  throw NotFoundError("no record '" + std::string(category) + "/" + std::string(name) + "'");
}

bool VaultStore::remove_record(std::string_view category, std::string_view name) {
  for (auto& c : categories_) {
    if (c.name != category) continue;
    const auto before = c.records.size();
    std::erase_if(c.records, [&](const Record& r) { return r.name == name; });
    const bool removed = c.records.size() != before;
    if (c.records.empty()) {
      std::erase_if(categories_, [](const Category& x) { return x.records.empty(); });
    }
    return removed;
  }
  return false;
}

std::vector<std::string> VaultStore::list() const {
  std::vector<std::string> out;
  for (const auto& c : categories_) {
    for (const auto& r : c.records) {
      out.push_back(c.name + "/" + r.name);
    }
  }
  return out;
}

const FileEntry* VaultStore::find_file(std::string_view display_name) const noexcept {
  for (const auto& f : files_) {
    if (f.display_name == display_name) return &f;
  }
  return nullptr;
}

std::optional<FileEntry> VaultStore::upsert_file(FileEntry entry) {
  for (auto& f : files_) {
    if (f.display_name == entry.display_name) {
      FileEntry old = std::move(f);
      f = std::move(entry);
      return old;
    }
  }
  files_.push_back(std::move(entry));
  return std::nullopt;
}

namespace {

constexpr std::uint8_t kStoreMagic[4] = {'V', 'S', 'T', 'O'};

class Writer {
 public:
  void raw(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), p, p + n);
  }
  void u16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    raw(s.data(), s.size());
  }
  Bytes& bytes() { return out_; }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint64_t uint(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= std::uint64_t{in_[pos_ + i]} << (8 * i);
    pos_ += static_cast<std::size_t>(width);
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(uint(4)); }
  std::string str() {
    const std::uint32_t n = u32();
    need(n);
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  void expect(const std::uint8_t* bytes, std::size_t n) {
    need(n);
    if (std::memcmp(in_.data() + pos_, bytes, n) != 0) {
      throw CorruptError("vault store: bad magic");
    }
    pos_ += n;
  }
  std::size_t pos() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) {
      throw CorruptError("vault store truncated at byte " + std::to_string(pos_));
    }
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint32_t content_crc32(std::span<const std::uint8_t> bytes) noexcept {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32_z(crc, bytes.data(), bytes.size());
  return static_cast<std::uint32_t>(crc);
}

Bytes serialize_store(const VaultStore& store) {
  Writer w;
  w.raw(kStoreMagic, sizeof kStoreMagic);
  w.u16(kStoreFormatVersion);
  w.u32(static_cast<std::uint32_t>(store.categories().size()));
  for (const auto& c : store.categories()) {
    w.str(c.name);
    w.u32(static_cast<std::uint32_t>(c.records.size()));
    for (const auto& r : c.records) {
      w.str(r.name);
      w.str(r.secret);
    }
  }
  w.u32(static_cast<std::uint32_t>(store.files().size()));
  for (const auto& f : store.files()) {
    w.str(f.display_name);
    w.str(f.blob_path);
    w.str(f.password);
    w.u64(f.length);
    w.u32(f.crc32);
  }
  w.u32(content_crc32(w.bytes()));
  return std::move(w.bytes());
}

VaultStore parse_store(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) {
    throw CorruptError("vault store truncated");
  }
  const std::size_t body = bytes.size() - 4;
  Reader crc_reader(bytes.subspan(body));
  if (static_cast<std::uint32_t>(crc_reader.uint(4)) != content_crc32(bytes.first(body))) {
    throw CorruptError("vault store checksum mismatch");
  }

  Reader r(bytes.first(body));
  r.expect(kStoreMagic, sizeof kStoreMagic);
  const auto version = static_cast<std::uint16_t>(r.uint(2));
  if (version != kStoreFormatVersion) {
    throw CorruptError("unsupported vault store version " + std::to_string(version));
  }
  VaultStore store;
  const std::uint32_t n_categories = r.u32();
  for (std::uint32_t i = 0; i < n_categories; ++i) {
    std::string cname = r.str();
    for (const auto& c : store.categories()) {
      if (c.name == cname) throw CorruptError("duplicate category '" + cname + "'");
    }
    const std::uint32_t n_records = r.u32();
    if (n_records == 0) {
      throw CorruptError("empty category '" + cname + "'");
    }
    for (std::uint32_t k = 0; k < n_records; ++k) {
      std::string rname = r.str();
      std::string secret = r.str();
      if (k > 0) {
        const auto& recs = store.categories().back().records;
        if (std::any_of(recs.begin(), recs.end(), [&](const Record& x) { return x.name == rname; })) {
          throw CorruptError("duplicate record '" + cname + "/" + rname + "'");
        }
      }
      store.put_record(cname, rname, secret);
    }
  }
  const std::uint32_t n_files = r.u32();
  for (std::uint32_t i = 0; i < n_files; ++i) {
    FileEntry f;
    f.display_name = r.str();
    f.blob_path = r.str();
    f.password = r.str();
    f.length = r.uint(8);
    f.crc32 = r.u32();
    if (store.upsert_file(std::move(f))) {
      throw CorruptError("duplicate file entry");
    }
  }
  if (r.remaining() != 0) {
    throw CorruptError("trailing bytes in vault store at byte " + std::to_string(r.pos()));
  }
  return store;
}

namespace {

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

constexpr std::string_view kAlphanumeric =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

}  // namespace

std::string generate_file_password() {
  XorShift gen(1, entropy_seed());
  std::string out(16, '\0');
  for (char& c : out) {
    c = kAlphanumeric[static_cast<std::size_t>(
        draw_range(gen, 0, static_cast<std::int64_t>(kAlphanumeric.size()) - 1))];
  }
  return out;
}

Vault::Vault(fs::path path, std::string master_password)
    : path_(std::move(path)), master_password_(std::move(master_password)) {
  const fs::path lock = lock_path(path_);
  const int fd = ::open(lock.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0600);
  if (fd < 0) {
    if (errno == EEXIST) {
      throw IoError("vault is locked by another process (" + lock.string() + ")");
    }
    throw IoError("cannot create lock " + lock.string() + ": " + std::strerror(errno));
  }
  const std::string pid = std::to_string(::getpid()) + "\n";
  (void)!::write(fd, pid.data(), pid.size());
  ::close(fd);
  holds_lock_ = true;
}

Vault::Vault(Vault&& other) noexcept
    : path_(std::move(other.path_)),
      master_password_(std::move(other.master_password_)),
      store_(std::move(other.store_)),
      holds_lock_(std::exchange(other.holds_lock_, false)) {}

Vault& Vault::operator=(Vault&& other) noexcept {
  if (this != &other) {
    release_lock();
    path_ = std::move(other.path_);
    master_password_ = std::move(other.master_password_);
    store_ = std::move(other.store_);
    holds_lock_ = std::exchange(other.holds_lock_, false);
  }
  return *this;
}

Vault::~Vault() { release_lock(); }

void Vault::release_lock() noexcept {
  if (holds_lock_) {
    std::error_code ec;
    fs::remove(lock_path(path_), ec);
    holds_lock_ = false;
  }
}

fs::path Vault::lock_path(const fs::path& vault_path) {
  fs::path p = vault_path;
  p += ".lock";
  return p;
}

fs::path Vault::blob_dir() const {
  fs::path p = path_;
  p += ".blobs";
  return p;
}

Vault Vault::create(const fs::path& path, std::string_view master_password) {
  if (fs::exists(path)) {
    throw IoError("refusing to overwrite existing file " + path.string());
  }
  Vault v(path, std::string(master_password));
  v.save();
  return v;
}

Vault Vault::open(const fs::path& path, std::string_view master_password) {
  if (!fs::exists(path)) {
    throw IoError("no vault at " + path.string());
  }
  Vault v(path, std::string(master_password));
  const Bytes container = read_file(path);
  const Bytes plain = unseal(container, master_password);
  v.store_ = parse_store(plain);
  return v;
}

void Vault::save() {
  const Bytes container = seal(serialize_store(store_), master_password_, ChainSpec::full());
  write_file_atomic(path_, container);
}

FileEntry Vault::add_file(std::span<const std::uint8_t> content, std::string_view display_name) {
  fs::create_directories(blob_dir());
  FileEntry entry;
  entry.display_name = std::string(display_name);
  entry.password = generate_file_password();
  entry.length = content.size();
  entry.crc32 = content_crc32(content);

  std::string blob_name;
  fs::path blob;
  do {
    blob_name = generate_file_password() + ".vsem";
    blob = blob_dir() / blob_name;
  } while (fs::exists(blob));
  write_file(blob, seal(content, entry.password, ChainSpec::full()));
  entry.blob_path = (blob_dir().filename() / blob_name).generic_string();

  if (auto old = store_.upsert_file(entry)) {
    std::error_code ec;
    fs::remove(path_.parent_path() / old->blob_path, ec);
  }
  return entry;
}

Bytes Vault::get_file(const FileEntry& entry) const {
  const fs::path blob = path_.parent_path() / entry.blob_path;
  if (!fs::exists(blob)) {
    throw CorruptError("blob missing for '" + entry.display_name + "': " + blob.string());
  }
  const Bytes container = read_file(blob);
  Bytes plain;
  try {
    plain = unseal(container, entry.password);
  } catch (const FormatError& e) {
    throw CorruptError("blob for '" + entry.display_name + "' is damaged: " + e.what());
  } catch (const AuthError&) {
    throw CorruptError("blob for '" + entry.display_name + "' failed its check block");
  }
  if (plain.size() != entry.length) {
    throw CorruptError("blob for '" + entry.display_name + "' has length " +
                       std::to_string(plain.size()) + ", expected " + std::to_string(entry.length));
  }
  if (content_crc32(plain) != entry.crc32) {
    throw CorruptError("blob for '" + entry.display_name + "' failed its content checksum");
  }
  return plain;
}

}  // namespace vsem
