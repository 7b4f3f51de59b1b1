#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "codetales/service/service.hpp"

namespace codetales::service {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const std::string& what, const fs::path& p) {
  throw std::runtime_error(what + " " + p.string() + ": " + std::strerror(errno));
}

void fsync_path(const fs::path& p, int flags) {
  int fd = ::open(p.c_str(), flags);
  if (fd < 0) fail("cannot open", p);
  if (::fsync(fd) != 0) {
    ::close(fd);
    fail("cannot fsync", p);
  }
  ::close(fd);
}

}  // namespace

ProfileStore::ProfileStore(fs::path dir, std::string content_version, int mastery_threshold)
    : dir_(std::move(dir)), content_version_(std::move(content_version)), threshold_(mastery_threshold) {
  fs::create_directories(dir_);
}

bool ProfileStore::valid_id(const std::string& id) {
  if (id.size() != 32) return false;
  for (char c : id)
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  return true;
}

std::string ProfileStore::new_id() {
  std::random_device rd;
  static const char* hex = "0123456789abcdef";
  std::string id;
  for (int i = 0; i < 4; ++i) {
    std::uint32_t word = rd();
    for (int k = 0; k < 8; ++k) {
      id += hex[word & 0xF];
      word >>= 4;
    }
  }
  return id;
}

fs::path ProfileStore::path_of(const std::string& id) const { return dir_ / (id + ".json"); }

bool ProfileStore::exists(const std::string& id) const { return valid_id(id) && fs::exists(path_of(id)); }

std::optional<story::LearnerProfile> ProfileStore::load(const std::string& id) const {
  if (!exists(id)) return std::nullopt;
  std::ifstream in(path_of(id), std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  Json j = Json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) throw std::runtime_error("corrupt profile " + path_of(id).string());
  auto profile = story::profile_from_json(j, threshold_);
  if (profile.id != id) throw std::runtime_error("profile " + path_of(id).string() + " has id " + profile.id);
  return profile;
}

void ProfileStore::save(const story::LearnerProfile& profile) const {
  if (!valid_id(profile.id)) throw std::runtime_error("invalid learner id '" + profile.id + "'");
  Json j = story::to_json(profile);
  j["content_version"] = content_version_;
  const std::string text = j.dump(2) + "\n";

  const fs::path target = path_of(profile.id);
  const fs::path tmp = dir_ / ("." + profile.id + ".tmp");
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) fail("cannot create", tmp);
  std::size_t done = 0;
  while (done < text.size()) {
    ssize_t n = ::write(fd, text.data() + done, text.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      fail("cannot write", tmp);
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    ::close(fd);
    fail("cannot fsync", tmp);
  }
  ::close(fd);
  if (::rename(tmp.c_str(), target.c_str()) != 0) fail("cannot rename onto", target);
  fsync_path(dir_, O_RDONLY | O_DIRECTORY);
}

}  // namespace codetales::service
