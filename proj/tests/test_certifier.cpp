#include <doctest.h>

#include "oracles.hpp"

using namespace edgepath;

namespace {

CertifyInput input(const std::string& a, const std::string& b, const std::string& pp) {
  return {oracle::corpus(a), oracle::corpus(b), pp, {}, {}};
}

Status status_of(const HardnessCertificate& c, std::string_view name) {
  const auto* h = c.find(name);
  REQUIRE(h);
  return h->status;
}

}  // namespace

TEST_CASE("C5 to K3 passes every stage") {
  auto cert = certify(input("c5.struct", "k3.struct", "E(x,y)"));
  CHECK(cert.np_hard);
  CHECK(cert.verdict() == "NP-hard");
  REQUIRE(cert.hypotheses.size() == hypothesis_names().size());
  for (std::size_t i = 0; i < cert.hypotheses.size(); ++i) {
    CHECK(cert.hypotheses[i].name == hypothesis_names()[i]);
    CHECK_MESSAGE(cert.hypotheses[i].status == Status::pass, cert.hypotheses[i].name);
  }
  CHECK(cert.failing().empty());
  CHECK(cert.extra["free_group_B"]["rank"] == 1);
  const auto& w = cert.find("mu_cycle_A")->witness;
  REQUIRE(w.contains("imbalance"));
  CHECK(w["imbalance"]["forward"] != w["imbalance"]["backward"]);
  CHECK(cert.find("nondegeneracy")->witness["entries"].size() == 30);
}

TEST_CASE("application suite reproduces with documented deviations") {
  auto report = run_application_suite(EDGEPATH_CORPUS_DIR);
  CHECK(report.ok());
  CHECK(report.results.size() == application_suite_cases().size());
  CHECK(report.count(CaseStatus::mismatch) == 0);
  CHECK(report.count(CaseStatus::deviation) == 2);
  CHECK(report.count(CaseStatus::reproduced) == 10);
  for (const auto& r : report.results) {
    if (r.status != CaseStatus::deviation) continue;
    CHECK(r.certificate.failing() == r.entry.known_deviation);
  }
  auto j = report.to_json();
  CHECK(j["cases"].size() == report.results.size());
  CHECK(j["mismatches"] == 0);
}

TEST_CASE("negative controls are not certified") {
  auto a2 = certify(input("a2.struct", "a3.struct", "R(x,y,z)"));
  CHECK_FALSE(a2.np_hard);
  CHECK(status_of(a2, "mu_connected_A") == Status::fail);

  auto k4 = certify(input("k3.struct", "k4.struct", "E(x,y)"));
  CHECK_FALSE(k4.np_hard);
  CHECK(k4.verdict() == "NOT CERTIFIED");
  CHECK(status_of(k4, "face_overlap_B") == Status::fail);
  CHECK(status_of(k4, "nondegeneracy") == Status::skipped);

  auto wrong = certify(input("k3.struct", "k2.struct", "E(x,y)"));
  CHECK(status_of(wrong, "template_witness") == Status::fail);
  CHECK_FALSE(wrong.np_hard);

  auto mixed = certify(input("k3.struct", "h2.struct", "E(x,y)"));
  CHECK(status_of(mixed, "similarity") == Status::fail);
  CHECK_FALSE(mixed.np_hard);
}

TEST_CASE("removing a tuple from R^B flips the verdict") {
  auto in = input("c5.struct", "k3.struct", "E(x,y)");
  auto rel = in.b.relation(0).relation;
  std::vector<Tuple> kept(rel.begin() + 1, rel.end());
  in.b = RelationalStructure("K3-", in.b.domain(), {{"E", Relation(2, kept)}});
  auto cert = certify(in);
  CHECK_FALSE(cert.np_hard);
  CHECK_FALSE(cert.failing().empty());
}

TEST_CASE("certificate JSON is deterministic") {
  auto in = input("c5.struct", "k3.struct", "E(x,y)");
  CertifyOptions threaded;
  threaded.threads = 4;
  auto a = certify(in).to_json().dump();
  CHECK(a == certify(in).to_json().dump());
  auto b = certify(in, threaded).to_json();
  b["details"].erase("caps");
  auto c = certify(in).to_json();
  c["details"].erase("caps");
  CHECK(b == c);
}

TEST_CASE("replay accepts honest and rejects tampered certificates") {
  auto in = input("c5.struct", "k3.struct", "E(x,y)");
  auto j = certify(in).to_json();
  CHECK(replay(j, in).empty());

  auto verdict = j;
  verdict["verdict"] = "NOT CERTIFIED";
  CHECK_FALSE(replay(verdict, in).empty());

  auto word = j;
  for (auto& h : word["hypotheses"]) {
    if (h["name"] == "mu_cycle_B") h["witness"]["word"] = "e0 e0";
  }
  CHECK_FALSE(replay(word, in).empty());

  auto status = j;
  status["hypotheses"][3]["status"] = "FAIL";
  CHECK_FALSE(replay(status, in).empty());

  auto other = input("c7.struct", "k3.struct", "E(x,y)");
  CHECK_FALSE(replay(j, other).empty());

  auto neg = input("k3.struct", "k4.struct", "E(x,y)");
  CHECK(replay(certify(neg).to_json(), neg).empty());
}

TEST_CASE("custom faces and custom mu") {
  auto in = input("c5.struct", "k3.struct", "E(x,y)");
  auto ra = oracle::relation_of("c5.struct", "E(x,y)");
  auto rb = oracle::relation_of("k3.struct", "E(x,y)");
  in.faces.box = false;
  in.faces.faces_a = build_box_complex(ra).maximal_faces();
  in.faces.faces_b = build_box_complex(rb).maximal_faces();
  in.mu.shift = false;
  in.mu.custom_a = mu_to_json(cyclic_shift_mu(ra));
  in.mu.custom_b = mu_to_json(cyclic_shift_mu(rb));
  auto cert = certify(in);
  CHECK(cert.np_hard);
  CHECK(cert.face_mode != "box");
  CHECK(cert.mu_mode != "shift");

  auto bad = in;
  bad.faces.faces_b = {};
  auto c = certify(bad);
  CHECK_FALSE(c.np_hard);
  CHECK(status_of(c, "connectivity_B") == Status::fail);
}
