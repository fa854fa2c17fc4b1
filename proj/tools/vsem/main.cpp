#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "password.hpp"
#include "vsem/bench.hpp"
#include "vsem/ciphers.hpp"
#include "vsem/container.hpp"
#include "vsem/error.hpp"
#include "vsem/file_io.hpp"
#include "vsem/imaging.hpp"
#include "vsem/metrics.hpp"
#include "vsem/vault.hpp"

namespace fs = std::filesystem;

namespace {

// Exit code contract.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIntegrity = 2;
constexpr int kExitIo = 3;

void add_password_flags(CLI::App& cmd, vsem::cli::PasswordSource& src) {
  auto* env = cmd.add_option("--password-env", src.env_var,
                             "Read the password from this environment variable");
  auto* file = cmd.add_option("--password-file", src.file,
                              "Read the password from the first line of this file");
  env->excludes(file);
}

std::string print_secret(const std::string& s, bool reveal) {
  if (reveal) return s;
  return "******** (" + std::to_string(s.size()) + " bytes)";
}

struct EncryptArgs {
  std::string in, out;
  std::string chain = "all";
  bool pixels_only = false;
  std::size_t block_size = vsem::kDefaultBlockSize;
  vsem::cli::PasswordSource pw;
};

int cmd_encrypt(const EncryptArgs& a) {
  const vsem::ChainSpec chain = vsem::ChainSpec::parse(a.chain);
  vsem::Bytes input = vsem::read_file(a.in);
  if (a.pixels_only) {
    input = vsem::image_as_bytes(vsem::read_pgm(input));
  }
  const std::string password = vsem::cli::read_password(a.pw, "Password: ");
  vsem::write_file(a.out, vsem::seal(input, password, chain, {a.block_size}));
  return kExitOk;
}

struct DecryptArgs {
  std::string in, out;
  std::size_t block_size = vsem::kDefaultBlockSize;
  vsem::cli::PasswordSource pw;
};

int cmd_decrypt(const DecryptArgs& a) {
  const vsem::Bytes container = vsem::read_file(a.in);
  (void)vsem::parse_header(container);
  const std::string password = vsem::cli::read_password(a.pw, "Password: ");
  vsem::write_file(a.out, vsem::unseal(container, password, {a.block_size}));
  return kExitOk;
}

struct AnalyzeArgs {
  std::string orig, enc;
  std::size_t n = vsem::kDefaultSampleSize;
  std::uint64_t seed = 1;
  std::string chain = "all";
  std::string csv_dir;
  std::string write_enc;
  vsem::cli::PasswordSource pw;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const vsem::GrayImage orig = vsem::read_pgm(vsem::read_file(a.orig));
  std::optional<vsem::GrayImage> enc;
  if (a.enc.empty()) {
    const std::string password = vsem::cli::read_password(a.pw, "Password: ");
    enc = vsem::bytes_as_image(
        vsem::encrypt_pipeline(vsem::image_as_bytes(orig), password,
                               vsem::ChainSpec::parse(a.chain)),
        orig.width(), orig.height());
  } else {
    const vsem::Bytes raw = vsem::read_file(a.enc);
    if (vsem::looks_like_container(raw)) {
      (void)vsem::parse_header(raw);
      const std::span<const std::uint8_t> payload =
          std::span<const std::uint8_t>(raw).subspan(vsem::kHeaderSize);
      enc = vsem::bytes_as_image(payload, orig.width(), orig.height());
    } else {
      enc = vsem::read_pgm(raw);
    }
  }
  if (!a.write_enc.empty()) {
    vsem::write_file(a.write_enc, vsem::write_pgm(*enc));
  }
  const vsem::MetricsReport report = vsem::analyze(orig, *enc, a.n, a.seed);
  std::cout << vsem::report_json(report) << "\n";
  if (!a.csv_dir.empty()) {
    fs::create_directories(a.csv_dir);
    for (vsem::Direction d : vsem::kAllDirections) {
      const std::string name(vsem::direction_name(d));
      const std::string enc_csv = vsem::adjacency_csv(vsem::sample_adjacent_pairs(*enc, a.n, d, a.seed));
      const std::string orig_csv = vsem::adjacency_csv(vsem::sample_adjacent_pairs(orig, a.n, d, a.seed));
      vsem::write_file(fs::path(a.csv_dir) / ("adjacency_" + name + ".csv"),
                       std::span(reinterpret_cast<const std::uint8_t*>(enc_csv.data()), enc_csv.size()));
      vsem::write_file(fs::path(a.csv_dir) / ("orig_adjacency_" + name + ".csv"),
                       std::span(reinterpret_cast<const std::uint8_t*>(orig_csv.data()), orig_csv.size()));
    }
  }
  return kExitOk;
}

struct BenchArgs {
  std::vector<std::string> sizes{"280K", "1M", "25M"};
  std::vector<std::string> chains{"x", "t", "s", "ct", "all"};
  std::size_t reps = 5;
  bool csv = false;
  bool monolithic = false;
};

int cmd_bench(const BenchArgs& a) {
  std::vector<std::size_t> sizes;
  for (const auto& s : a.sizes) sizes.push_back(vsem::parse_size(s));
  std::vector<vsem::BenchSelection> selections;
  for (const auto& c : a.chains) selections.push_back(vsem::parse_selection(c));
  vsem::BenchOptions opts;
  opts.reps = a.reps;
  if (a.monolithic) opts.block_size = 0;
  const auto results = vsem::run_bench(sizes, selections, opts);
  std::cout << (a.csv ? vsem::format_csv(results) : vsem::format_table(results));
  return kExitOk;
}

struct VaultArgs {
  std::string vault;
  std::string category, name;
  std::string file, out, display_name;
  std::string secret_env, secret_file;
  bool reveal = false;
  vsem::cli::PasswordSource pw;
};

std::string read_secret(const VaultArgs& a) {
  if (!a.secret_env.empty()) {
    const char* v = std::getenv(a.secret_env.c_str());
    if (v == nullptr) throw vsem::IoError("environment variable " + a.secret_env + " is not set");
    return v;
  }
  if (!a.secret_file.empty()) {
    const vsem::Bytes b = vsem::read_file(a.secret_file);
    return std::string(b.begin(), b.end());
  }
  std::string s((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

vsem::Vault open_vault(const VaultArgs& a) {
  return vsem::Vault::open(a.vault, vsem::cli::read_password(a.pw, "Master password: "));
}

int vault_init(const VaultArgs& a) {
  if (fs::exists(a.vault)) {
    throw vsem::IoError("refusing to overwrite existing file " + a.vault);
  }
  const std::string pw = vsem::cli::read_password(a.pw, "New master password: ");
  (void)vsem::Vault::create(a.vault, pw);
  std::cout << "created " << a.vault << "\n";
  return kExitOk;
}

int vault_list(const VaultArgs& a) {
  const vsem::Vault v = open_vault(a);
  for (const auto& c : v.store().categories()) {
    std::cout << c.name << "\n";
    for (const auto& r : c.records) std::cout << "  " << r.name << "\n";
  }
  if (!v.store().files().empty()) {
    std::cout << "[files]\n";
    for (const auto& f : v.store().files()) {
      std::cout << "  " << f.display_name << " (" << f.length << " bytes)\n";
    }
  }
  return kExitOk;
}

int vault_put(const VaultArgs& a) {
  vsem::Vault v = open_vault(a);
  v.store().put_record(a.category, a.name, read_secret(a));
  v.save();
  return kExitOk;
}

int vault_get(const VaultArgs& a) {
  const vsem::Vault v = open_vault(a);
  std::cout << a.category << "/" << a.name << ": "
            << print_secret(v.store().get_record(a.category, a.name), a.reveal) << "\n";
  return kExitOk;
}

int vault_add_file(const VaultArgs& a) {
  const vsem::Bytes content = vsem::read_file(a.file);
  vsem::Vault v = open_vault(a);
  const std::string name =
      a.display_name.empty() ? fs::path(a.file).filename().string() : a.display_name;
  const vsem::FileEntry e = v.add_file(content, name);
  v.save();
  std::cout << "stored " << e.display_name << " (" << e.length << " bytes) as " << e.blob_path
            << "\n";
  return kExitOk;
}

int vault_get_file(const VaultArgs& a) {
  const vsem::Vault v = open_vault(a);
  const vsem::FileEntry* e = v.store().find_file(a.name);
  if (e == nullptr) throw vsem::NotFoundError("no file entry '" + a.name + "'");
  vsem::write_file(a.out, v.get_file(*e));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vsem: stream/transposition cipher toolkit with encryption-quality analysis. "
               "Research and teaching use only; not a secure cipher."};
  app.require_subcommand(1);

  EncryptArgs enc;
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a file into a VSEM container");
  encrypt->add_option("input", enc.in, "Plaintext file")->required();
  encrypt->add_option("output", enc.out, "Container to write")->required();
  encrypt->add_option("--chain", enc.chain, "Stages: comma list of x,t,s,ct or all")
      ->capture_default_str();
  encrypt->add_flag("--pixels-only", enc.pixels_only,
                    "Input is a PGM; encrypt only its pixel bytes (for analyze)");
  encrypt->add_option("--block-size", enc.block_size, "Pipeline block size in bytes, 0 = none")
      ->capture_default_str();
  add_password_flags(*encrypt, enc.pw);

  DecryptArgs dec;
  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a VSEM container");
  decrypt->add_option("input", dec.in, "Container file")->required();
  decrypt->add_option("output", dec.out, "Plaintext to write")->required();
  decrypt->add_option("--block-size", dec.block_size, "Must match the encrypting block size")
      ->capture_default_str();
  add_password_flags(*decrypt, dec.pw);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand(
      "analyze", "EQ and adjacent-pixel correlation between an image and its encryption");
  analyze->add_option("original", an.orig, "Original PGM")->required();
  analyze->add_option("encrypted", an.enc,
                      "Encrypted PGM, or a container made with --pixels-only. "
                      "Omit to encrypt the original on the fly");
  analyze->add_option("-n,--samples", an.n, "Pairs per direction")->capture_default_str();
  analyze->add_option("--seed", an.seed, "Pair sampling seed")->capture_default_str();
  analyze->add_option("--chain", an.chain, "Chain for on-the-fly encryption")
      ->capture_default_str();
  analyze->add_option("--csv-dir", an.csv_dir, "Write adjacency CSVs per direction here");
  analyze->add_option("--write-enc", an.write_enc, "Save the encrypted image as PGM");
  add_password_flags(*analyze, an.pw);

  BenchArgs bn;
  auto* bench = app.add_subcommand("bench", "Median encryption time per stage and buffer size");
  bench->add_option("--sizes", bn.sizes, "Buffer sizes, e.g. 280K,1M,25M")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--chains", bn.chains, "Columns: x,t,s,ct,all or combos like x+s")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--reps", bn.reps, "Timed repetitions per cell")->capture_default_str();
  bench->add_flag("--csv", bn.csv, "Machine-readable output");
  bench->add_flag("--monolithic", bn.monolithic, "Disable 4 MiB block chunking");

  VaultArgs va;
  auto* vault = app.add_subcommand("vault", "Encrypted record and file store");
  vault->require_subcommand(1);
  auto with_vault = [&](CLI::App* sub) {
    sub->add_option("vault", va.vault, "Vault file")->required();
    add_password_flags(*sub, va.pw);
    return sub;
  };
  auto* v_init = with_vault(vault->add_subcommand("init", "Create an empty vault"));
  auto* v_list = with_vault(vault->add_subcommand("list", "List categories, records and files"));
  auto* v_put = with_vault(vault->add_subcommand("put", "Store a secret (read from stdin by default)"));
  v_put->add_option("category", va.category)->required();
  v_put->add_option("name", va.name)->required();
  auto* s_env = v_put->add_option("--secret-env", va.secret_env, "Take the secret from this variable");
  v_put->add_option("--secret-file", va.secret_file, "Take the secret from this file")->excludes(s_env);
  auto* v_get = with_vault(vault->add_subcommand("get", "Show a secret (masked unless --reveal)"));
  v_get->add_option("category", va.category)->required();
  v_get->add_option("name", va.name)->required();
  v_get->add_flag("--reveal", va.reveal, "Print the secret in clear");
  auto* v_add = with_vault(vault->add_subcommand("add-file", "Encrypt a file into the vault"));
  v_add->add_option("file", va.file)->required();
  v_add->add_option("--name", va.display_name, "Display name (default: file name)");
  auto* v_getf = with_vault(vault->add_subcommand("get-file", "Decrypt a stored file"));
  v_getf->add_option("name", va.name, "Display name")->required();
  v_getf->add_option("-o,--output", va.out, "Where to write the file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*encrypt) return cmd_encrypt(enc);
    if (*decrypt) return cmd_decrypt(dec);
    if (*analyze) return cmd_analyze(an);
    if (*bench) {
      if (bn.reps == 0) {
        std::cerr << "error: --reps must be at least 1\n";
        return kExitUsage;
      }
      return cmd_bench(bn);
    }
    if (*v_init) return vault_init(va);
    if (*v_list) return vault_list(va);
    if (*v_put) return vault_put(va);
    if (*v_get) return vault_get(va);
    if (*v_add) return vault_add_file(va);
    if (*v_getf) return vault_get_file(va);
  } catch (const vsem::AuthError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIntegrity;
  } catch (const vsem::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIntegrity;
  } catch (const vsem::CorruptError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIntegrity;
  } catch (const vsem::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIntegrity;
  } catch (const vsem::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const vsem::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
