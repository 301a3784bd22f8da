// lexalign command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 data or runtime error.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lexalign/aligner.hpp"
#include "lexalign/dictstore.hpp"
#include "lexalign/lexiserve.hpp"
#include "lexalign/sparqlet.hpp"
#include "lexalign/triplemap.hpp"
#include "lexalign/tsv.hpp"

namespace {

using namespace lexalign;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void print_list(const std::vector<std::string>& items) {
  for (const auto& i : items) std::cout << i << '\n';
}

int run_serve(const std::string& store_dir, const serve::ServiceConfig& cfg) {
  // Block the shutdown signals before any thread starts so they all inherit the mask.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  const auto store = dict::DictionaryStore::ingest(store_dir);
  serve::Service service(store, cfg);
  std::cerr << "serving " << store_dir << " on " << service.url() << '\n';
  int sig = 0;
  sigwait(&set, &sig);
  std::cerr << "signal " << sig << ", shutting down\n";
  service.stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilingual ontology alignment through a machine-readable dictionary"};
  app.require_subcommand(1);

  // ingest
  std::string ingest_dir, ingest_out;
  auto* ingest = app.add_subcommand("ingest", "Validate seven dictionary tables and write a store");
  ingest->add_option("dir", ingest_dir, "Directory with the table files")->required();
  ingest->add_option("-o,--output", ingest_out, "Store directory to write")->required();

  // serve
  std::string serve_store, serve_bind = "127.0.0.1:8080";
  std::size_t max_patterns = 64;
  int timeout_ms = 5000;
  auto* serve_cmd = app.add_subcommand("serve", "Serve a store over HTTP");
  serve_cmd->add_option("store", serve_store)->required();
  serve_cmd->add_option("--bind", serve_bind, "host:port")->capture_default_str();
  serve_cmd->add_option("--max-patterns", max_patterns)->capture_default_str()->check(CLI::PositiveNumber);
  serve_cmd->add_option("--timeout-ms", timeout_ms)->capture_default_str()->check(CLI::PositiveNumber);

  // query
  std::string query_store, query_file;
  auto* query = app.add_subcommand("query", "Run a SPARQL query file against a store");
  query->add_option("store", query_store)->required();
  query->add_option("query-file", query_file)->required();

  // translate
  std::vector<std::string> tr_args;
  std::string tr_endpoint, tr_from, tr_to;
  bool tr_reverse = false;
  auto* translate = app.add_subcommand("translate", "Look up translations of a word");
  translate->add_option("args", tr_args, "[store] word")->required()->expected(1, 2);
  translate->add_option("--endpoint", tr_endpoint, "Service URL instead of a local store");
  translate->add_option("--from", tr_from)->required();
  translate->add_option("--to", tr_to)->required();
  translate->add_flag("--reverse", tr_reverse, "Headwords in --to whose --from translations list the word");

  // match
  std::string m_o1, m_o2, m_store, m_endpoint, m_table, m_thesaurus, m_out;
  bool m_identity = false, m_sw = false, m_no_structure = false;
  align::MatchConfig mcfg;
  auto* match = app.add_subcommand("match", "Align two N-Triples ontologies");
  match->add_option("onto1", m_o1, "Source-language ontology")->required();
  match->add_option("onto2", m_o2, "Target-language ontology")->required();
  auto* src_store = match->add_option("--store", m_store, "Local dictionary store");
  auto* src_endpoint = match->add_option("--endpoint", m_endpoint, "Dictionary service URL");
  auto* src_table = match->add_option("--table", m_table, "Static translation table");
  auto* src_identity = match->add_flag("--identity", m_identity, "Labels stand for themselves");
  src_store->excludes(src_endpoint, src_table, src_identity);
  src_endpoint->excludes(src_table, src_identity);
  src_table->excludes(src_identity);
  match->add_option("--thesaurus", m_thesaurus, "Thesaurus TSV enabling the lexical stage");
  match->add_option("--jw", mcfg.jw_threshold, "Jaro-Winkler threshold")->capture_default_str();
  match->add_option("--jcn", mcfg.jcn_threshold, "Jiang-Conrath threshold")->capture_default_str();
  match->add_flag("--sw", m_sw, "Also score with normalized Smith-Waterman");
  match->add_flag("--no-structure", m_no_structure, "Skip the structural stage");
  match->add_option("--from", mcfg.source_lang)->capture_default_str();
  match->add_option("--to", mcfg.target_lang)->capture_default_str();
  match->add_option("--threads", mcfg.threads)->capture_default_str()->check(CLI::PositiveNumber);
  match->add_option("-o,--output", m_out, "Alignment TSV to write")->required();

  // eval
  std::string e_align, e_ref;
  auto* eval = app.add_subcommand("eval", "Precision and recall against a reference");
  eval->add_option("alignment", e_align)->required();
  eval->add_option("reference", e_ref)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*ingest) {
      const auto store = dict::DictionaryStore::ingest(ingest_dir);
      store.write(ingest_out);
      const auto s = store.stats();
      std::cout << "entries=" << s.total_entries
                << " translation_entries=" << s.total_translation_entries << '\n';
    } else if (*serve_cmd) {
      serve::ServiceConfig cfg;
      try {
        cfg = serve::parse_bind(serve_bind);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      cfg.max_query_patterns = max_patterns;
      cfg.request_timeout_ms = timeout_ms;
      return run_serve(serve_store, cfg);
    } else if (*query) {
      const auto store = dict::DictionaryStore::ingest(query_store);
      const auto triples = rdf::to_triples(store);
      const auto q = sparql::parse_query(slurp(query_file), triples.prefixes());
      const auto result = sparql::evaluate(q, triples);
      std::vector<std::string> head;
      for (const auto& h : result.header) head.push_back("?" + h);
      std::cout << tsv::join(head) << '\n';
      for (const auto& row : result.rows) std::cout << tsv::join(row) << '\n';
    } else if (*translate) {
      std::string word;
      std::optional<dict::DictionaryStore> store;
      std::optional<serve::Client> client;
      if (!tr_endpoint.empty()) {
        if (tr_args.size() != 1) throw UsageError("with --endpoint give only the word");
        word = tr_args[0];
        client.emplace(tr_endpoint);
      } else {
        if (tr_args.size() != 2) throw UsageError("give a store and a word, or --endpoint and a word");
        store = dict::DictionaryStore::ingest(tr_args[0]);
        word = tr_args[1];
      }
      if (tr_reverse)
        print_list(client ? client->reverse_translate(word, tr_from, tr_to)
                          : store->reverse_translations(word, tr_from, tr_to));
      else
        print_list(client ? client->translate(word, tr_from, tr_to)
                          : store->translations(word, tr_from, tr_to));
    } else if (*match) {
      mcfg.sw_enabled = m_sw;
      mcfg.structure_enabled = !m_no_structure;
      if (!mcfg.valid()) throw UsageError("thresholds must be positive");
      std::optional<dict::DictionaryStore> store;
      std::unique_ptr<labels::Translator> translator;
      if (!m_store.empty()) {
        store = dict::DictionaryStore::ingest(m_store);
        translator = std::make_unique<labels::DictionaryTranslator>(*store);
      } else if (!m_endpoint.empty()) {
        translator = std::make_unique<serve::EndpointTranslator>(serve::Client(m_endpoint));
      } else if (!m_table.empty()) {
        translator = std::make_unique<labels::StaticTableTranslator>(
            labels::StaticTableTranslator::load(m_table));
      } else if (m_identity) {
        translator = std::make_unique<labels::IdentityTranslator>();
      } else {
        throw UsageError("one of --store, --endpoint, --table or --identity is required");
      }
      std::optional<taxsim::Thesaurus> thesaurus;
      if (!m_thesaurus.empty()) thesaurus = taxsim::Thesaurus::load(m_thesaurus);
      const auto o1 = onto::Ontology::load(m_o1);
      const auto o2 = onto::Ontology::load(m_o2);
      for (const auto* o : {&o1, &o2})
        for (const auto& w : o->warnings()) std::cerr << "warning: " << w << '\n';
      const auto a = align::align(o1, o2, *translator, mcfg, thesaurus ? &*thesaurus : nullptr);
      align::write_alignment(a, m_out);
      std::cout << a.size() << " correspondences written to " << m_out << '\n';
    } else if (*eval) {
      const auto a = align::to_pair_set(align::read_pairs(e_align));
      const auto r = align::to_pair_set(align::read_pairs(e_ref));
      std::cout << align::evaluate(a, r).display() << '\n';
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
