// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cryptomine/annotate.hpp"
#include "cryptomine/backoff.hpp"
#include "cryptomine/errors.hpp"
#include "cryptomine/irc.hpp"
#include "cryptomine/pipeline.hpp"
#include "cryptomine/report.hpp"
#include "cryptomine/sanitize.hpp"
#include "cryptomine/series.hpp"
#include "cryptomine/stats.hpp"
#include "cryptomine/twitter.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/table1.hpp"

using namespace cryptomine;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Collects failed checks for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string &what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char *f, double v) {
  char b[64];
  std::snprintf(b, sizeof b, f, v);
  return b;
}

std::string c1_pearson(Check &c) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> ud(-100, 100);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    size_t n = 3 + rng() % 98;
    std::vector<double> x(n), y(n);
    for (size_t k = 0; k < n; ++k) {
      x[k] = ud(rng);
      y[k] = (i % 2 ? 0.7 * x[k] : 0.0) + ud(rng);
    }
    worst = std::max(worst, std::abs(pearson(x, y) - oracle::naive_pearson(x, y)));
  }
  c.expect(worst <= 1e-10, "oracle deviation " + fmt("%.3g", worst));
  double hand = pearson(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 3, 2, 5});
  c.expect(std::abs(hand - 5.5 / std::sqrt(43.75)) <= 1e-12, "hand case " + fmt("%.17g", hand));
  double secs = seconds_since(t0);
  c.expect(secs < 1.0, "runtime " + fmt("%.3f", secs) + "s");
  return "max |dr|=" + fmt("%.2g", worst) + ", " + fmt("%.3f", secs) + "s";
}

std::string c2_irc(Check &c) {
  std::ifstream in(CRYPTOMINE_TEST_DATA "/fixtures/irc_all_subtypes.log");
  c.expect(bool(in), "fixture missing");
  // Independent tally of the fixture: chat lines carry "<nick>".
  std::ifstream raw(CRYPTOMINE_TEST_DATA "/fixtures/irc_all_subtypes.log");
  size_t chat = 0;
  std::vector<std::string> seen_labels;
  for (std::string l; std::getline(raw, l);) {
    if (l.find("] <") != std::string::npos) ++chat;
    auto p = l.find("*** ");
    if (p != std::string::npos) seen_labels.push_back(l.substr(p + 4, l.find(':', p) - p - 4));
  }
  for (const char *s : {"Join", "Topic", "Quit", "Mode", "Created", "Part", "Nick", "Notice"}) {
    c.expect(std::count(seen_labels.begin(), seen_labels.end(), s) >= 1,
             std::string("fixture lacks ") + s);
  }
  IrcIngestOptions opts;
  opts.channel = "#bitcoin";
  IrcIngestStats st;
  size_t messages = 0;
  ingest_log(in, opts, [&](Message &&) { ++messages; }, st);
  c.expect(messages == chat, "messages " + std::to_string(messages) + " != " + std::to_string(chat));
  c.expect(st.dropped_network == 8, "dropped_network " + std::to_string(st.dropped_network));
  return "N=" + std::to_string(chat) + " messages=" + std::to_string(messages) +
         " dropped_network=" + std::to_string(st.dropped_network);
}

std::string c3_sanitize(Check &c) {
  std::ifstream in(CRYPTOMINE_TEST_DATA "/fixtures/escapes.jsonl");
  size_t fixture_lines = 0, replaced = 0;
  bool saw_2026 = false, saw_surrogate = false;
  auto check_line = [&](const std::string &line) {
    std::string once = sanitize_line(line);
    c.expect(once.size() == line.size(), "length changed: " + line.substr(0, 40));
    c.expect(sanitize_line(once) == once, "not idempotent: " + line.substr(0, 40));
    if (line.find('\\') == std::string::npos) c.expect(once == line, "escape-free line changed");
    size_t diff = 0;
    for (size_t i = 0; i < line.size() && i < once.size(); ++i) diff += line[i] != once[i];
    return diff;
  };
  for (std::string line; std::getline(in, line);) {
    ++fixture_lines;
    saw_2026 |= line.find("\\u2026") != std::string::npos;
    saw_surrogate |= line.find("\\ud83d") != std::string::npos;
    if (check_line(line)) ++replaced;
  }
  c.expect(fixture_lines > 0 && saw_2026 && saw_surrogate, "fixture incomplete");
  std::mt19937_64 rng(3);
  const std::string alphabet = "ab \\u0123456789ABCDEFdef\"{}:,";
  for (int i = 0; i < 10000; ++i) {
    std::string line;
    size_t len = rng() % 80;
    for (size_t k = 0; k < len; ++k) {
      if (rng() % 6 == 0) {
        char hex[8];
        std::snprintf(hex, sizeof hex, "\\u%04x", unsigned(rng() % 0x10000));
        line += hex;
      } else {
        line += alphabet[rng() % alphabet.size()];
      }
    }
    check_line(line);
  }
  return std::to_string(fixture_lines) + " fixture lines (" + std::to_string(replaced) +
         " rewritten) + 10000 random lines";
}

std::string c4_keywords(Check &c) {
  KeywordMatcher m;
  const std::string word = "bitcoin";
  size_t matched = 0;
  for (unsigned mask = 0; mask < (1u << word.size()); ++mask) {
    std::string w = word;
    for (size_t i = 0; i < w.size(); ++i) {
      if (mask & (1u << i)) w[i] = char(w[i] - 'a' + 'A');
    }
    bool ok = m.matches("today " + w + " moved", {});
    matched += ok;
    c.expect(ok, "permutation " + w);
  }
  std::vector<std::string> tags = {"bitcoin"};
  c.expect(m.matches("lunch was good", tags), "hashtag entity with unrelated text");
  c.expect(m.matches("#bitcoin lunch was good", {}), "#bitcoin in text");
  c.expect(!m.matches("bit coin", {}), "'bit coin' matched");
  return std::to_string(matched) + "/128 permutations; #bitcoin yes; 'bit coin' no";
}

std::string c5_backoff(Check &c) {
  auto p = BackoffPolicy::defaults(FailureMode::kHttpError);
  p.max_jitter = 0;
  BackoffState s;
  std::vector<double> got;
  for (int i = 0; i < 10; ++i) {
    auto d = next_delay(p, s, Outcome::Failure(FailureMode::kHttpError));
    got.push_back(d.delay);
    s = d.state;
  }
  const std::vector<double> want = {5, 10, 20, 40, 80, 160, 320, 320, 320, 320};
  c.expect(got == want, "unjittered sequence");
  s = next_delay(p, s, Outcome::Success()).state;
  c.expect(next_delay(p, s, Outcome::Failure(FailureMode::kHttpError)).delay == 5.0,
           "reset after success");

  std::ifstream in(CRYPTOMINE_TEST_DATA "/golden/backoff_http_seed42.txt");
  std::vector<double> golden;
  for (double v; in >> v;) golden.push_back(v);
  c.expect(golden.size() == 10, "golden file missing or short");
  auto q = BackoffPolicy::defaults(FailureMode::kHttpError);
  q.jitter_seed = 42;
  BackoffState js;
  for (size_t i = 0; i < golden.size(); ++i) {
    auto d = next_delay(q, js, Outcome::Failure(FailureMode::kHttpError));
    js = d.state;
    c.expect(std::abs(d.delay - golden[i]) <= 1e-9 * golden[i],
             "golden mismatch at " + std::to_string(i));
  }
  return "5,10,20,40,80,160,320,320,...; reset to 5; " + std::to_string(golden.size()) +
         " golden jitter values";
}

std::string c6_golden_run(Check &c) {
  auto dir = fs::temp_directory_path() / "cryptomine_acceptance_golden";
  fs::remove_all(dir);
  auto corpus = corpus::generate(dir, 14, 6);
  auto t0 = Clock::now();
  auto res = run_all(corpus.config);
  double secs = seconds_since(t0);
  c.expect(res.report.rows.size() == 2, "row count");
  double r_eng = 0, worst = 0;
  if (res.report.rows.size() == 2) {
    const auto &tw = res.report.rows[0];
    const auto &irc = res.report.rows[1];
    c.expect(tw.total_messages == corpus.twitter_total, "twitter total");
    c.expect(irc.total_messages == corpus.irc_total, "irc total");
    auto check = [&](const Correlation &got, const std::vector<std::uint64_t> &counts,
                     const std::vector<double> &market) {
      double want = oracle::naive_pearson(corpus::as_doubles(counts), market);
      c.expect(got.r.has_value(), "undefined correlation");
      if (got.r) worst = std::max(worst, std::abs(*got.r - want));
    };
    check(tw.volume, corpus.twitter_daily, corpus.volume);
    check(tw.price, corpus.twitter_daily, corpus.price);
    check(irc.volume, corpus.irc_daily, corpus.volume);
    check(irc.price, corpus.irc_daily, corpus.price);
    c.expect(worst <= 1e-10, "oracle deviation " + fmt("%.3g", worst));
    r_eng = tw.volume.r.value_or(0);
    c.expect(r_eng >= 0.99, "engineered r_volume " + fmt("%.4f", r_eng));
  }
  c.expect(secs < 10.0, "runtime " + fmt("%.2f", secs) + "s");

  // Rendering fixture: totals and four-decimal strings as printed.
  std::istringstream table(render_table(fixture::table1_report(), TableFormat::kTsv));
  std::string line;
  std::getline(table, line);
  c.expect(line.starts_with("Data Source\tTotal Messages\tBitcoin Volume Correlation\tBitcoin "
                            "Price Correlation\tn_days\tpolicy"),
           "header");
  for (const char *want : fixture::kTable1Lines) {
    std::getline(table, line);
    c.expect(line.starts_with(std::string(want) + "\t"), std::string("row ") + want);
  }
  return "totals exact, max |dr|=" + fmt("%.2g", worst) + ", r_volume=" + fmt("%.4f", r_eng) +
         ", " + fmt("%.2f", secs) + "s, 6-row table strings match";
}

std::string c7_gaps(Check &c) {
  auto series = [](const std::vector<std::uint64_t> &counts) {
    DailySeries s;
    auto d = corpus::first_day();
    for (auto n : counts) {
      s.counts[d] = n;
      s.flags[d] = DayFlag::kOk;
      d += std::chrono::days{1};
    }
    return s;
  };
  auto flags_of = [](const DailySeries &s) {
    std::vector<bool> out;
    for (const auto &[d, f] : s.flags) out.push_back(f == DayFlag::kOutage);
    return out;
  };
  std::vector<std::uint64_t> injected = {1000, 980, 1020, 1010, 990, 1005, 995, 0,
                                         1000, 1010, 50,  990,  1000};
  auto f = flags_of(detect_gaps(series(injected)));
  size_t flagged = std::count(f.begin(), f.end(), true);
  c.expect(f[7], "zero-count day not flagged");
  c.expect(f[10], "5% day not flagged");
  c.expect(flagged == 2, "extra flags: " + std::to_string(flagged));
  std::vector<std::uint64_t> decline;
  for (int i = 0; i <= 10; ++i) decline.push_back(std::uint64_t(1000 - 50 * i));
  auto g = flags_of(detect_gaps(series(decline)));
  size_t decline_flags = std::count(g.begin(), g.end(), true);
  c.expect(decline_flags == 0, "gradual decline flagged " + std::to_string(decline_flags));
  return "zero day + 5% day flagged, decline flags=" + std::to_string(decline_flags);
}

long peak_rss_kb() {
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  return ru.ru_maxrss;
}

std::string c8_throughput(Check &c) {
  auto path = fs::temp_directory_path() / "cryptomine_acceptance_100mb.jsonl";
  const std::uint64_t target = 100ull * 1000 * 1000;
  {
    std::ofstream out(path, std::ios::binary);
    std::mt19937_64 rng(8);
    std::uint64_t written = 0, id = 1;
    std::string line;
    while (written < target) {
      int day = int(rng() % 60);
      auto d = corpus::first_day() + std::chrono::days{day};
      line = "{\"id\":" + std::to_string(id++) + ",\"created_at\":\"" +
             corpus::twitter_time(d, unsigned(rng() % 86400)) +
             "\",\"user\":{\"screen_name\":\"user" + std::to_string(rng() % 5000) +
             "\"},\"text\":\"" + gen::random_text(rng, 6 + rng() % 10) +
             (rng() % 3 ? " bitcoin \\u2026 #btc" : " nothing here") +
             "\",\"entities\":{\"hashtags\":[]}}\n";
      out << line;
      written += line.size();
    }
  }
  Gazetteer gaz;
  gaz.add("bitcoin", "currency", "crypto");
  gaz.add("bitcoin cash", "currency", "crypto");
  gaz.add("coinbase", "organization", "exchange");
  TweetStreamOptions opts{KeywordMatcher(), Pipeline::standard(), Resources{&gaz}, nullptr,
                          nullptr};
  DailyCounter counter;
  std::ifstream in(path, std::ios::binary);
  auto t0 = Clock::now();
  auto st = run_tweet_stream(in, opts, counter);
  auto series = detect_gaps(counter.finish("twitter"));
  double secs = seconds_since(t0);
  fs::remove(path);
  double mbps = double(st.bytes) / 1e6 / secs;
  double rss_mb = double(peak_rss_kb()) / 1024.0;
  c.expect(st.bytes >= target, "corpus short");
  c.expect(series.total() == st.ingest.matched, "aggregate total mismatch");
  c.expect(st.annotate.documents == st.ingest.matched, "annotated documents mismatch");
  c.expect(mbps >= 1.0, "throughput " + fmt("%.2f", mbps) + " MB/s");
  c.expect(rss_mb < 256.0, "peak RSS " + fmt("%.1f", rss_mb) + " MB");
  return fmt("%.1f", double(st.bytes) / 1e6) + " MB in " + fmt("%.2f", secs) + "s = " +
         fmt("%.2f", mbps) + " MB/s, peak RSS " + fmt("%.1f", rss_mb) + " MB";
}

bool oracle_space(char32_t ch) {
  static const std::u32string set =
      U" \t\n\r\v\f\u0085\u00a0\u1680\u2000\u2001\u2002\u2003\u2004\u2005\u2006"
      U"\u2007\u2008\u2009\u200a\u2028\u2029\u202f\u205f\u3000";
  return set.find(ch) != std::u32string::npos;
}

std::string c9_annotation(Check &c) {
  Gazetteer gaz;
  gaz.add("bitcoin", "currency", "crypto");
  gaz.add("bitcoin cash", "currency", "crypto");
  gaz.add("btc", "currency", "crypto_ticker");
  Resources res{&gaz};
  auto pipeline = Pipeline::standard();
  std::mt19937_64 rng(9);
  size_t queries = 0;
  for (int i = 0; i < 1000; ++i) {
    auto doc = pipeline.run(Document("doc" + std::to_string(i), gen::random_text(rng, 1 + rng() % 20)),
                            res);
    const auto &chars = doc.document().chars();
    std::vector<int> cover(chars.size(), 0);
    for (const auto &a : doc.annotations()) {
      if (a.type == ann::kToken || a.type == ann::kHashtag || a.type == ann::kMention ||
          a.type == ann::kUrl) {
        for (size_t k = a.start; k < a.end; ++k) ++cover[k];
      }
    }
    for (size_t k = 0; k < chars.size(); ++k) {
      c.expect(cover[k] == (oracle_space(chars[k]) ? 0 : 1),
               "partition broken in doc " + std::to_string(i));
    }
    for (int q = 0; q < 10; ++q, ++queries) {
      size_t len = chars.size();
      size_t ws = rng() % (len + 1);
      size_t we = ws + rng() % (len - ws + 1);
      std::vector<std::string> types;
      if (q % 2) types.push_back(std::string(ann::kToken));
      std::vector<Annotation> want;
      for (const auto &a : doc.annotations()) {
        if ((types.empty() || a.type == types[0]) && oracle::overlaps(a.start, a.end, ws, we)) {
          want.push_back(a);
        }
      }
      std::sort(want.begin(), want.end(), [](const auto &l, const auto &r) {
        return std::tie(l.start, l.end, l.id) < std::tie(r.start, r.end, r.id);
      });
      c.expect(doc.annotations_in(types, ws, we) == want,
               "annotations_in mismatch in doc " + std::to_string(i));
    }
    auto json = doc.to_json();
    auto back = AnnotatedDocument::from_json(json);
    c.expect(back.annotations() == doc.annotations() &&
                 back.document().text() == doc.document().text() && back.to_json() == json,
             "round trip in doc " + std::to_string(i));
  }
  return "1000 documents, " + std::to_string(queries) + " window queries, round trip exact";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char *name;
    std::function<std::string(Check &)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Pearson oracle equivalence", c1_pearson},
      {2, "IRC filter completeness", c2_irc},
      {3, "Sanitizer contract", c3_sanitize},
      {4, "Keyword filter", c4_keywords},
      {5, "Backoff schedule", c5_backoff},
      {6, "End-to-end golden run", c6_golden_run},
      {7, "Gap detection", c7_gaps},
      {8, "Throughput and memory", c8_throughput},
      {9, "Annotation integrity", c9_annotation},
  };
  int failed = 0;
  for (const auto &cr : criteria) {
    Check check;
    std::string detail;
    try {
      detail = cr.run(check);
    } catch (const std::exception &e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    bool pass = check.failures.empty();
    failed += !pass;
    std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", cr.id, cr.name,
                pass ? detail.c_str() : check.failures.front().c_str());
    for (size_t i = 1; i < check.failures.size(); ++i) {
      std::printf("       %s\n", check.failures[i].c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
