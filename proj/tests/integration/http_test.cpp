#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <httplib.h>
#include <json.hpp>
#include <thread>

#include "process.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = SENTIKIT_CLI;
const std::string kCorpus = std::string(SENTIKIT_FIXTURE_DIR) + "/annotation_corpus.jsonl";

class Server {
 public:
  Server(const fs::path& store, const std::vector<std::string>& extra = {}) {
    std::vector<std::string> args{kCli, "serve", "--corpus", kCorpus, "--store", store.string(), "--port", "0",
                                  "--host", "127.0.0.1"};
    args.insert(args.end(), extra.begin(), extra.end());
    child_ = std::make_unique<testproc::Child>(args);
    const std::string line = child_->read_line();
    const auto colon = line.rfind(':');
    if (line.rfind("listening on http://", 0) != 0 || colon == std::string::npos) {
      throw std::runtime_error("unexpected banner: " + line);
    }
    port_ = std::stoi(line.substr(colon + 1));
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(10, 0);
    return c;
  }
  testproc::Child& child() { return *child_; }

 private:
  std::unique_ptr<testproc::Child> child_;
  int port_ = 0;
};

class HttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    static std::atomic<int> counter{0};
    dir_ = fs::temp_directory_path() / ("sentikit_http_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

json label(const std::string& id, const std::string& who, const std::string& l) {
  return {{"comment_id", id}, {"annotator", who}, {"label", l}};
}

int post(httplib::Client& c, const std::string& path, const json& body) {
  auto r = c.Post(path, body.dump(), "application/json");
  return r ? r->status : -1;
}

json get(httplib::Client& c, const std::string& path) {
  auto r = c.Get(path);
  if (!r) throw std::runtime_error("request failed: " + path);
  return json::parse(r->body);
}

}  // namespace

TEST_F(HttpTest, AnnotationRoundTripOverHttp) {
  Server s(dir_ / "store.jsonl");
  auto c = s.client();
  auto task = get(c, "/api/next?annotator=annotator1");
  const std::string id = task["comment_id"];
  EXPECT_FALSE(task["text"].get<std::string>().empty());
  EXPECT_EQ(post(c, "/api/labels", label(id, "annotator1", "Negative")), 200);
  EXPECT_EQ(post(c, "/api/labels", label(id, "annotator1", "Negative")), 409);
  EXPECT_EQ(post(c, "/api/labels", label("nope", "annotator1", "Negative")), 404);
  EXPECT_EQ(post(c, "/api/labels", label(id, "annotator2", "bad")), 400);
  EXPECT_EQ(post(c, "/api/labels", label(id, "annotator2", "Positive")), 200);
  auto queue = get(c, "/api/queue");
  EXPECT_EQ(queue["count"], 1);
  EXPECT_EQ(post(c, "/api/resolve", {{"comment_id", id}, {"label", "Positive"}, {"annotator", "annotator3"}}), 200);
  EXPECT_EQ(get(c, "/api/comments/" + id)["gold"], "Positive");
  auto exported = c.Get("/api/export");
  ASSERT_TRUE(exported);
  EXPECT_EQ(exported->body, json::parse(exported->body.substr(0, exported->body.find('\n'))).dump() + "\n");
  EXPECT_EQ(get(c, "/api/agreement")["total"], 1);
  EXPECT_EQ(c.Get("/api/unknown")->status, 404);
  EXPECT_EQ(s.child().terminate(), 0);
}

TEST_F(HttpTest, KillAndRestartKeepsAcknowledgedWrites) {
  json before;
  std::string expected_export;
  {
    Server s(dir_ / "store.jsonl", {"--snapshot-every", "4"});
    auto c = s.client();
    for (int i = 0; i < 9; ++i) {
      auto who = i % 2 ? "annotator2" : "annotator1";
      std::string id = get(c, std::string("/api/next?annotator=") + who)["comment_id"];
      ASSERT_EQ(post(c, "/api/labels", label(id, who, i % 3 == 0 ? "Neutral" : "Positive")), 200);
    }
    before = get(c, "/api/agreement");
    expected_export = c.Get("/api/export")->body;
    s.child().kill_hard();
  }
  Server s(dir_ / "store.jsonl", {"--snapshot-every", "4"});
  auto c = s.client();
  EXPECT_EQ(get(c, "/api/agreement"), before);
  EXPECT_EQ(c.Get("/api/export")->body, expected_export);
  EXPECT_EQ(get(c, "/api/next?annotator=annotator1")["remaining"], 307 - 5);
}

TEST_F(HttpTest, ConcurrentDuplicateSubmissions) {
  Server s(dir_ / "store.jsonl");
  std::atomic<int> ok{0}, conflict{0}, other{0};
  std::vector<std::thread> threads;
  for (int i = 0; i < 6; ++i) {
    threads.emplace_back([&] {
      auto c = s.client();
      int status = post(c, "/api/labels", label("c001", "annotator2", "Neutral"));
      (status == 200 ? ok : status == 409 ? conflict : other)++;
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(ok, 1);
  EXPECT_EQ(conflict, 5);
  EXPECT_EQ(other, 0);
}

TEST_F(HttpTest, ServesStaticAssets) {
  fs::create_directories(dir_ / "web");
  std::ofstream(dir_ / "web" / "index.html") << "<html>annotate</html>";
  Server s(dir_ / "store.jsonl", {"--static", (dir_ / "web").string()});
  auto c = s.client();
  auto r = c.Get("/");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(r->body, "<html>annotate</html>");
  EXPECT_EQ(c.Get("/api/config")->status, 200);
}

TEST_F(HttpTest, BadStartupExitsNonZero) {
  auto r = testproc::run({kCli, "serve", "--corpus", kCorpus, "--store", (dir_ / "s.jsonl").string(), "--static",
                          (dir_ / "missing").string(), "--port", "0"});
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}
