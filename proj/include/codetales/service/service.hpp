#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "codetales/content/content.hpp"

namespace codetales::service {

using Json = nlohmann::ordered_json;

/// One JSON document per learner under `dir`, named `<id>.json`.
class ProfileStore {
 public:
  ProfileStore(std::filesystem::path dir, std::string content_version, int mastery_threshold);

  /// 32 lowercase hex digits.
  static bool valid_id(const std::string& id);
  /// 128 random bits from the OS entropy source.
  static std::string new_id();

  bool exists(const std::string& id) const;
  /// nullopt when the learner is unknown; throws std::runtime_error on a
  /// corrupt document.
  std::optional<story::LearnerProfile> load(const std::string& id) const;
  /// Write to a temporary file, fsync, rename over the old document, fsync
  /// the directory.
  void save(const story::LearnerProfile& profile) const;

  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path path_of(const std::string& id) const;

  std::filesystem::path dir_;
  std::string content_version_;
  int threshold_;
};

struct Response {
  int status = 200;
  Json body;
};

/// Transport-independent request handling. Thread safe: requests touching
/// the same learner are serialized, others run concurrently.
class Api {
 public:
  Api(const content::ContentBundle& bundle, std::filesystem::path data_dir);

  Response handle(const std::string& method, const std::string& path,
                  const std::map<std::string, std::string>& query, const std::string& body);

  const content::ContentBundle& bundle() const noexcept { return bundle_; }
  const story::StoryEngine& engine() const noexcept { return engine_; }
  ProfileStore& store() noexcept { return store_; }

 private:
  std::mutex& learner_mutex(const std::string& id);
  Response stories(const std::map<std::string, std::string>& query);
  Response page(const std::string& story, const std::string& n, const std::map<std::string, std::string>& query);
  Response attempt(const std::string& body);
  Response reveal(const std::string& body);
  Response create_learner(const std::string& body);
  Response learner(const std::string& id);

  const content::ContentBundle& bundle_;
  story::StoryEngine engine_;
  ProfileStore store_;
  std::mutex table_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> learner_mutexes_;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path ui_dir;  // served at / when set
};

class Server {
 public:
  Server(Api& api, ServeOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Returns the bound port, or -1.
  int bind();
  /// Blocks until stop().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace codetales::service
