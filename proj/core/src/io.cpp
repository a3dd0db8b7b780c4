// Apache License, Version 2.0, refer to LICENSE.txt
#include "lmsmooth/io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace lmsmooth::io {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream ss(line);
  std::string f;
  while (ss >> f) fields.push_back(std::move(f));
  return fields;
}

Count parse_count(const std::string& s, const std::string& path) {
  try {
    return static_cast<Count>(std::stoull(s));
  } catch (const std::exception&) {
    throw IoError("bad count '" + s + "' in " + path);
  }
}

double parse_double(const std::string& s, const std::string& path) {
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw IoError("bad number '" + s + "' in " + path);
  }
}

}  // namespace

std::string fmt_g15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for digest: " + path);
  std::uint64_t h = 14695981039346656037ull;
  char buf[65536];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
    if (got < static_cast<std::streamsize>(sizeof(buf))) break;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
  return out;
}

std::vector<Sentence> read_sentences(const std::string& path) {
  auto in = open_in(path);
  std::vector<Sentence> sentences;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    Sentence s(tokens.begin(), tokens.end());
    if (!is_valid_sentence(s)) {
      throw IoError(path + ":" + std::to_string(lineno) +
                    ": not a marker-wrapped sentence");
    }
    sentences.push_back(std::move(s));
  }
  return sentences;
}

void write_sentences(const std::string& path, const std::vector<Sentence>& sentences) {
  auto out = open_out(path);
  for (const auto& s : sentences) out << join_tokens(s) << '\n';
}

void write_counts(const CountTable& table, const std::string& stem) {
  {
    auto out = open_out(stem + ".tok.counts");
    for (WordId id : table.vocab().ids_sorted_by_token()) {
      Count c = table.unigram(id);
      if (c > 0) out << c << ' ' << table.vocab().word(id) << '\n';
    }
  }
  {
    auto sorted = table.bigrams_sorted();
    std::sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
      const auto& va = table.vocab();
      auto ka = std::make_pair(va.word(bigram_context(a.first)), va.word(bigram_outcome(a.first)));
      auto kb = std::make_pair(va.word(bigram_context(b.first)), va.word(bigram_outcome(b.first)));
      return ka < kb;
    });
    auto out = open_out(stem + ".bigr.counts");
    for (const auto& [key, c] : sorted) {
      out << c << ' ' << table.vocab().word(bigram_context(key)) << ' '
          << table.vocab().word(bigram_outcome(key)) << '\n';
    }
  }
}

CountTable read_counts(const std::string& stem) {
  CountTable table(std::make_shared<Vocabulary>());
  {
    std::string path = stem + ".tok.counts";
    auto in = open_in(path);
    std::string line;
    while (std::getline(in, line)) {
      auto f = split_ws(line);
      if (f.empty()) continue;
      if (f.size() != 2) throw IoError("expected 'count token' in " + path);
      WordId id = table.vocab_ptr()->intern(f[1]);
      table.add_unigram(id, parse_count(f[0], path));
    }
  }
  {
    std::string path = stem + ".bigr.counts";
    auto in = open_in(path);
    std::string line;
    while (std::getline(in, line)) {
      auto f = split_ws(line);
      if (f.empty()) continue;
      if (f.size() != 3) throw IoError("expected 'count j i' in " + path);
      WordId j = table.vocab().require(f[1]);
      WordId i = table.vocab().require(f[2]);
      table.add_bigram(j, i, parse_count(f[0], path));
    }
  }
  return table;
}

void write_freqs(const FreqView& view, const std::string& stem) {
  {
    auto out = open_out(stem + ".tok.freq");
    for (WordId id : view.vocab().ids_sorted_by_token()) {
      double f = view.unigram(id);
      if (f > 0.0) out << fmt_g15(f) << ' ' << view.vocab().word(id) << '\n';
    }
  }
  {
    std::vector<BigramKey> keys;
    keys.reserve(view.cond_map().size());
    for (const auto& [key, f] : view.cond_map()) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), [&](BigramKey a, BigramKey b) {
      const auto& v = view.vocab();
      auto ka = std::make_pair(v.word(bigram_context(a)), v.word(bigram_outcome(a)));
      auto kb = std::make_pair(v.word(bigram_context(b)), v.word(bigram_outcome(b)));
      return ka < kb;
    });
    auto out = open_out(stem + ".bigr.freq");
    for (BigramKey key : keys) {
      out << fmt_g15(view.cond_map().at(key)) << ' ' << view.vocab().word(bigram_context(key))
          << ' ' << view.vocab().word(bigram_outcome(key)) << '\n';
    }
  }
}

void write_lambda_model(const LambdaModel& model, const std::string& path) {
  auto out = open_out(path);
  out << "# lmsmooth lambdas v1\n";
  out << "# r " << model.buckets.r << '\n';
  out << "# range_max " << fmt_g15(model.buckets.range_max) << '\n';
  out << "# iterations " << model.iterations << '\n';
  out << "# converged " << (model.converged ? 1 : 0) << '\n';
  out << "# dropped_terms " << model.dropped_terms << '\n';
  for (int h = 1; h <= model.buckets.r; ++h) {
    out << fmt_g15(model.lambdas[static_cast<std::size_t>(h - 1)]) << ' ' << h << '\n';
  }
}

LambdaModel read_lambda_model(const std::string& path) {
  auto in = open_in(path);
  LambdaModel model;
  model.lambdas.clear();
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto f = split_ws(line);
      if (f.size() >= 3 && f[1] == "r") model.buckets.r = static_cast<int>(parse_count(f[2], path));
      if (f.size() >= 3 && f[1] == "range_max") model.buckets.range_max = parse_double(f[2], path);
      if (f.size() >= 3 && f[1] == "iterations")
        model.iterations = static_cast<int>(parse_count(f[2], path));
      if (f.size() >= 3 && f[1] == "converged") model.converged = f[2] != "0";
      if (f.size() >= 3 && f[1] == "dropped_terms") model.dropped_terms = parse_count(f[2], path);
      continue;
    }
    auto f = split_ws(line);
    if (f.size() != 2) throw IoError("expected 'lambda h' in " + path);
    model.lambdas.push_back(parse_double(f[0], path));
  }
  if (static_cast<int>(model.lambdas.size()) != model.buckets.r)
    throw IoError("lambda count does not match header r in " + path);
  model.brackets.assign(model.lambdas.size(), LambdaBracket{});
  for (std::size_t h = 0; h < model.lambdas.size(); ++h)
    model.brackets[h].lambda = model.lambdas[h];
  return model;
}

void write_dirichlet_model(const DirichletModel& model, const std::string& path) {
  auto out = open_out(path);
  out << "alpha " << fmt_g15(model.alpha) << '\n';
  for (WordId id : model.vocab->ids_sorted_by_token()) {
    if (id == Vocabulary::kBos) continue;
    out << fmt_g15(model.u[id]) << ' ' << model.vocab->word(id) << '\n';
  }
}

DirichletModel read_dirichlet_model(const std::string& path,
                                    std::shared_ptr<const Vocabulary> vocab) {
  auto in = open_in(path);
  DirichletModel model;
  model.vocab = vocab;
  model.u.assign(vocab->size(), 0.0);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty model file: " + path);
  auto head = split_ws(line);
  if (head.size() != 2 || head[0] != "alpha")
    throw IoError("expected 'alpha value' on the first line of " + path);
  model.alpha = parse_double(head[1], path);
  while (std::getline(in, line)) {
    auto f = split_ws(line);
    if (f.empty()) continue;
    if (f.size() != 2) throw IoError("expected 'u_i token' in " + path);
    auto id = vocab->find(f[1]);
    if (!id) throw IoError("model token absent from count vocabulary: " + f[1]);
    model.u[*id] = parse_double(f[0], path);
  }
  return model;
}

void write_good_turing(const GoodTuringTable& table, const std::string& path) {
  auto out = open_out(path);
  for (const auto& [r, nr] : table.n_r) out << r << ' ' << nr << '\n';
  out << "N0 " << table.n0 << '\n';
  out << "N " << table.n << '\n';
}

void write_report_tsv(const std::vector<EvalReport>& reports, const std::string& path) {
  auto out = open_out(path);
  out << "sample\tmodel\tN\tlog2prob\tperplexity\n";
  for (const auto& r : reports) {
    out << r.sample << '\t' << r.model << '\t' << r.n << '\t' << fmt_g15(r.log2_prob) << '\t'
        << fmt_g15(r.perplexity) << '\n';
  }
}

void write_report_json(const std::vector<EvalReport>& reports,
                       const std::vector<ModelInfo>& models, const std::string& path) {
  nlohmann::json doc;
  doc["results"] = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json item;
    item["sample"] = r.sample;
    item["model"] = r.model;
    item["N"] = r.n;
    if (std::isfinite(r.log2_prob)) {
      item["log2prob"] = r.log2_prob;
      item["perplexity"] = r.perplexity;
    } else {
      item["log2prob"] = "-inf";
      item["perplexity"] = "inf";
    }
    item["oov_sentences_skipped"] = r.oov_sentences_skipped;
    auto zeros = nlohmann::json::array();
    for (const auto& [j, i] : r.zero_bigrams) zeros.push_back({j, i});
    item["zero_prob_bigrams"] = zeros;
    doc["results"].push_back(item);
  }
  doc["models"] = nlohmann::json::array();
  for (const auto& m : models) {
    nlohmann::json item;
    item["name"] = m.name;
    item["type"] = m.type;
    for (const auto& [k, v] : m.params) item[k] = v;
    doc["models"].push_back(item);
  }
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

void write_prob_dump(const ConditionalModel& model, const std::vector<Sentence>& test,
                     const std::string& path) {
  const Vocabulary& vocab = model.vocab();
  std::set<std::pair<std::string, std::string>> bigrams;
  for (const auto& s : test) {
    for (std::size_t y = 1; y < s.size(); ++y) bigrams.emplace(s[y - 1], s[y]);
  }
  auto out = open_out(path);
  for (const auto& [j, i] : bigrams) {
    double q = model.prob(vocab.require(j), vocab.require(i));
    out << fmt_g15(q) << ' ' << j << ' ' << i << '\n';
  }
}

}  // namespace lmsmooth::io
