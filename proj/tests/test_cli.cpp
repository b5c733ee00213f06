#include <gtest/gtest.h>

#include <sstream>

#include "raminsep/cli.hpp"

using namespace raminsep;

namespace {

struct Out {
  int code;
  std::string out, err;
};

Out call(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int c = run(std::move(args), o, e);
  return {c, o.str(), e.str()};
}

}  // namespace

TEST(Cli, Indices) {
  const Out r = call({"indices", "--p", "2", "--m", "1", "--minpoly", "X^2+t*X+t"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"indices\":[1,0],\"break\":1}\n");
}

TEST(Cli, Recover) {
  const Out r = call({"recover", "--p", "2", "--m", "1", "--minpoly", "X^2+t*X+t"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out)["match"].get<bool>());
}

TEST(Cli, BuildThenRecover) {
  const Out b = call({"build", "--p", "3", "--m", "2", "--as", "t^-2+t^-1,a*t^-2"});
  ASSERT_EQ(b.code, 0) << b.out << b.err;
  const json bundle = json::parse(b.out);
  EXPECT_EQ(bundle["b"], 2);
  const Out r = call({"recover", "--p", "3", "--m", "2", "--minpoly", bundle["minpoly"]});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["match"].get<bool>());
  EXPECT_EQ(j["recovered_indices"], bundle["indices"]);
  const Out n = call({"normgroup", "--p", "3", "--m", "2", "--minpoly", bundle["minpoly"]});
  EXPECT_TRUE(json::parse(n.out)["equal"].get<bool>());
  const Out e = call({"build", "--p", "3", "--m", "2", "--as", "t^-2+t^-1,a*t^-2", "--emit", "expansion"});
  EXPECT_EQ(json::parse(e.out)["c_expansion"], bundle["c_expansion"]);
}

TEST(Cli, Pairing) {
  const Out r = call({"pairing", "--p", "2", "--beta", "t^-1", "--eta", "1+t"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"value\":1}\n");
}

TEST(Cli, Verify) {
  const std::vector<std::string> args{"verify", "--p", "3", "--m", "2", "--nu", "2", "--bmax", "4", "--trials", "50", "--seed", "7"};
  const Out a = call(args), b = call(args);
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"indices", "--p", "2"}).code, 2);
  EXPECT_EQ(call({"normgroup", "--p", "2", "--minpoly", "X^2+t*X+t", "--method", "fast"}).code, 2);
  const Out bad = call({"indices", "--p", "2", "--minpoly", "t^"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("offset"), std::string::npos);
  const Out math = call({"indices", "--p", "2", "--minpoly", "X^2+1"});
  EXPECT_EQ(math.code, 3);
  EXPECT_EQ(json::parse(math.out)["error"]["kind"], "PreconditionViolated");
  const Out nogal = call({"build", "--p", "3", "--m", "2", "--as", "t^-1,2*t^-1"});
  EXPECT_EQ(nogal.code, 3);
}
