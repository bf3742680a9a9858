// Copyright 2026 The morphdec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "morphdec/lexicon.hpp"

namespace morphdec {
namespace {

using testing::bundled;
using testing::entry_index;
using testing::stream;

Lexicon parse(const std::string& text) {
  auto in = stream(text);
  return load_lexicon(in, bundled().phonemes, "t");
}

const UpmEntry& entry(const std::string& surface, const std::string& pos) {
  return bundled().model.entries[entry_index(bundled(), surface, pos)];
}

TEST(LoadLexicon, AcceptsVerbEntry) {
  auto lex = parse("ci-wu\tci-wu\tV_REG\tV_REG\tc:none\twu:none\n");
  ASSERT_EQ(lex.entries.size(), 1u);
  const UpmEntry& e = lex.entries[0];
  EXPECT_EQ(e.orthographic, "ci-wu");
  EXPECT_EQ(e.left_pos, "V_REG");
  EXPECT_TRUE(e.left_phon.unchanged());
  EXPECT_FALSE(e.idiom);
  EXPECT_EQ(lex.tags, (std::set<std::string>{"V_REG"}));
}

TEST(LoadLexicon, AcceptsSurfaceVariant) {
  auto lex = parse("sswu\tswu\tN_BND\tN_BND\ts>ss\twu:none\n");
  const UpmEntry& e = lex.entries.at(0);
  EXPECT_EQ(e.surface_header, "sswu");
  EXPECT_EQ(e.orthographic, "swu");
  EXPECT_EQ(e.left_phon.phoneme, "s");
  EXPECT_EQ(*e.left_phon.target, "ss");
  EXPECT_EQ(e.left_phon.render(), "s>ss");
}

TEST(LoadLexicon, RejectsTagMismatchWithoutIdiomFlag) {
  EXPECT_THROW(parse("ka\tka\tV_REG\tJ_CASE\tk:none\ta:none\n"), ValidationError);
  EXPECT_NO_THROW(parse("ka\tka\tV_REG\tJ_CASE\tk:none\ta:none\tIDIOM\n"));
}

TEST(LoadLexicon, RejectsBadRecords) {
  EXPECT_THROW(parse("ka\tka\tV\tV\tk:none\n"), ParseError);
  EXPECT_THROW(parse("ka\tka\tV\tV\tk:none\ta:none\tidiom\n"), ParseError);
  EXPECT_THROW(parse("ka\tka\tV\tV\tk\ta:none\n"), ParseError);
  EXPECT_THROW(parse("ka\tka\tV\tV\tq:none\ta:none\n"), ValidationError);
  EXPECT_THROW(parse("ka\tka\tV\tV\tn:none\ta:none\n"), ValidationError);   // wrong first phoneme
  EXPECT_THROW(parse("ka\tka\tV\tV\tk:none\to:none\n"), ValidationError);   // wrong last phoneme
  EXPECT_THROW(parse("kqa\tka\tV\tV\tk:none\ta:none\n"), ValidationError);  // untokenizable
  EXPECT_THROW(parse("ka\tka\tV\tV\tk:none\ta:none\nka\tka\tV\tV\tk:none\ta:none\n"), ValidationError);
  EXPECT_NO_THROW(parse("ka\tka\tV\tV\tk:none\ta:none\nka\tka\tJ\tJ\tk:none\ta:none\n"));
}

TEST(CompileHeaders, Examples) {
  const auto& r = bundled();
  EXPECT_EQ(diphone_symbols(entry("ci-wu", "V_REG").diphone_header), (std::vector<std::string>{"ci", "wu"}));
  EXPECT_EQ(diphone_symbols(entry("kang", "N_CMN").diphone_header), (std::vector<std::string>{"ka", "ang"}));
  const auto& l = entry("l", "E_ADN").diphone_header;
  ASSERT_EQ(l.size(), 1u);
  EXPECT_EQ(l[0].kind, DiphoneKind::kCoda);
  EXPECT_EQ(l[0].symbol, "l");
  for (const UpmEntry& e : r.model.entries) {
    ASSERT_FALSE(e.diphone_header.empty()) << e.surface_header;
    for (const Diphone& d : e.diphone_header) {
      if (d.kind != DiphoneKind::kCoda) {
        EXPECT_TRUE(r.inventory.id_of(d.symbol)) << e.surface_header;
      }
    }
  }
}

TEST(CompileHeaders, NamesTheEntryOnFailure) {
  auto lex = parse("ssa\tsa\tV\tV\ts>ss\ta:none\n");
  auto in = stream("ka\tC1V\tk\ta\n");
  const DiphoneInventory tiny = DiphoneInventory::load(in, bundled().phonemes, "tiny");
  try {
    compile_headers(lex.entries, bundled().phonemes, tiny);
    FAIL();
  } catch (const InventoryMiss& e) {
    EXPECT_NE(std::string(e.what()).find("ssa"), std::string::npos);
  }
}

TEST(Serialize, RoundTripIsIdentityOnRecordSet) {
  auto in = open_input(testing::data_dir() / "lexicon.tsv");
  Lexicon a = load_lexicon(in, bundled().phonemes);
  const std::string text = serialize_lexicon(a);
  Lexicon b = parse(text);
  EXPECT_EQ(serialize_lexicon(b), text);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  canonicalize(a);
  for (std::size_t k = 0; k < a.entries.size(); ++k) EXPECT_EQ(a.entries[k].key(), b.entries[k].key());
}

TEST(Serialize, CanonicalOrderIgnoresInputOrder) {
  auto a = parse("ka\tka\tV\tV\tk:none\ta:none\nmul\tmul\tN\tN\tm:none\tl:none\n");
  auto b = parse("mul\tmul\tN\tN\tm:none\tl:none\nka\tka\tV\tV\tk:none\ta:none\n");
  EXPECT_EQ(serialize_lexicon(a), serialize_lexicon(b));
}

TEST(TagSet, LineageAndFinality) {
  const TagSet& t = bundled().model.grammar.tags;
  EXPECT_EQ(t.lineage("J_CASE"), (std::vector<std::string>{"J_CASE", "J"}));
  EXPECT_TRUE(t.is_final("J_CASE"));
  EXPECT_TRUE(t.is_final("E_FIN"));
  EXPECT_FALSE(t.is_final("E_ADN"));
  EXPECT_FALSE(t.is_final("V_REG"));
}

TEST(TagSet, RejectsCyclesAndUnknownParents) {
  auto load = [](const std::string& s) {
    auto in = stream(s);
    return TagSet::load(in);
  };
  EXPECT_THROW(load("A\tB\nB\tA\n"), Error);
  EXPECT_THROW(load("A\tZ\n"), Error);
  EXPECT_THROW(load("A\nA\n"), ParseError);
  EXPECT_NO_THROW(load("A\nB\tA\tfinal\n"));
}

TEST(MorphConnect, Examples) {
  const Grammar& g = bundled().model.grammar;
  EXPECT_TRUE(morph_connect_allowed(entry("ci-wu", "V_REG"), entry("l", "E_ADN"), g.morph, g.tags));
  EXPECT_FALSE(morph_connect_allowed(entry("ci", "V_REG"), entry("wul", "V_REG"), g.morph, g.tags));
  EXPECT_FALSE(morph_connect_allowed(entry("mul", "N_CMN"), entry("mul", "N_CMN"), g.morph, g.tags));
  EXPECT_TRUE(morph_connect_allowed(entry("l", "E_ADN"), entry("sswu", "N_BND"), g.morph, g.tags));
}

TEST(MorphConnect, HierarchyMostSpecificLevelDecides) {
  auto tin = stream("N\nN_BND\tN\nJ\t-\tfinal\nJ_AUX\tJ\nJ_CASE\tJ\n");
  TagSet tags = TagSet::load(tin);
  MorphConnMatrix m;
  m.set("N", "J", Verdict::kAllow);
  EXPECT_TRUE(m.allowed("N_BND", "J_AUX", tags));  // two levels up
  m.set("N_BND", "J", Verdict::kDeny);
  EXPECT_FALSE(m.allowed("N_BND", "J_AUX", tags));  // one level up beats two
  m.set("N", "J_AUX", Verdict::kAllow);
  EXPECT_FALSE(m.allowed("N_BND", "J_AUX", tags));  // same level, deny wins
  m.set("N_BND", "J_AUX", Verdict::kAllow);
  EXPECT_TRUE(m.allowed("N_BND", "J_AUX", tags));  // exact record
  EXPECT_FALSE(m.allowed("J", "N", tags));          // nothing recorded
}

TEST(MorphConnect, BundledDenyOverridesParentAllow) {
  const Grammar& g = bundled().model.grammar;
  EXPECT_FALSE(morph_connect_allowed(entry("swu", "N_BND"), entry("nun", "J_AUX"), g.morph, g.tags));
  EXPECT_TRUE(morph_connect_allowed(entry("swu", "N_BND"), entry("ka", "J_CASE"), g.morph, g.tags));
}

TEST(MorphConnect, PureFunctionOfTags) {
  const auto& r = bundled();
  const auto& es = r.model.entries;
  const Grammar& g = r.model.grammar;
  for (std::size_t a = 0; a < es.size(); ++a) {
    for (std::size_t b = a + 1; b < es.size(); ++b) {
      if (es[a].left_pos != es[b].left_pos || es[a].right_pos != es[b].right_pos) continue;
      for (const UpmEntry& x : es) {
        EXPECT_EQ(morph_connect_allowed(es[a], x, g.morph, g.tags), morph_connect_allowed(es[b], x, g.morph, g.tags));
        EXPECT_EQ(morph_connect_allowed(x, es[a], g.morph, g.tags), morph_connect_allowed(x, es[b], g.morph, g.tags));
      }
    }
  }
}

TEST(PhonConnect, Examples) {
  const Grammar& g = bundled().model.grammar;
  EXPECT_TRUE(phon_connect_allowed(entry("l", "E_ADN"), entry("sswu", "N_BND"), g.phon));
  EXPECT_TRUE(phon_connect_allowed(entry("na", "N_CMN"), entry("ka", "J_CASE"), g.phon));
  EXPECT_FALSE(phon_connect_allowed(entry("na", "N_CMN"), entry("sswu", "N_BND"), g.phon));
  EXPECT_FALSE(phon_connect_allowed(entry("l", "E_ADN"), entry("nun", "J_AUX"), g.phon));  // explicit deny
  EXPECT_TRUE(phon_connect_allowed(entry("meng", "V_REG"), entry("nun", "J_AUX"), g.phon));
}

TEST(PhonConnect, WildcardLevels) {
  const PhonClass l{"l", std::nullopt}, ss{"s", "ss"}, star_ss{"*", "ss"}, n{"n", std::nullopt};
  PhonConnMatrix p;
  EXPECT_FALSE(p.allowed(n, ss));
  p.set(PhonClass{"*", std::nullopt}, star_ss, Verdict::kAllow);
  EXPECT_TRUE(p.allowed(n, ss));
  p.set(n, star_ss, Verdict::kDeny);
  EXPECT_FALSE(p.allowed(n, ss));
  EXPECT_TRUE(p.allowed(l, ss));
  p.set(l, ss, Verdict::kDeny);
  p.set(l, star_ss, Verdict::kAllow);
  EXPECT_FALSE(p.allowed(l, ss));  // exact record beats the wildcard
}

TEST(PhonConnect, RejectsUndeclaredClasses) {
  auto lex = parse("ka\tka\tV\tV\tk:none\ta:none\n");
  auto in = stream("a:none\tz>zz\tallow\n");
  EXPECT_THROW(PhonConnMatrix::load(in, lex), Error);
  auto ok = stream("a:none\t*>ss\tallow\n");
  EXPECT_NO_THROW(PhonConnMatrix::load(ok, lex));
}

TEST(ConnectivityTable, AgreesWithPredicates) {
  const auto& r = bundled();
  const auto& es = r.model.entries;
  const Grammar& g = r.model.grammar;
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = 0; j < es.size(); ++j) {
      EXPECT_EQ(r.model.conn.morph(i, j), morph_connect_allowed(es[i], es[j], g.morph, g.tags));
      EXPECT_EQ(r.model.conn.phon(i, j), phon_connect_allowed(es[i], es[j], g.phon));
    }
  }
}

TEST(BundledLexicon, Size) {
  EXPECT_GE(bundled().model.entries.size(), 50u);
}

}  // namespace
}  // namespace morphdec
