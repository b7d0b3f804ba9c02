import json

import pytest

from graphaug.corpus import (
    Corpus,
    CorpusError,
    DocumentOrigin,
    Speaker,
    load_corpus,
    parse_corpus,
    split_seen_unseen,
)

from conftest import tiny_corpus_data


def write_corpus(tmp_path, data, name="c.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


class TestLoadCorpus:
    def test_tiny_corpus_has_three_documents(self, tiny_corpus_file):
        corpus = load_corpus(tiny_corpus_file)
        docs = corpus.documents()
        assert len(docs) == 3
        assert [d.origin for d in docs] == [
            DocumentOrigin.UTTERANCE_TEXT,
            DocumentOrigin.UTTERANCE_TEXT,
            DocumentOrigin.KNOWLEDGE_PASSAGE,
        ]

    def test_empty_dialogue_list(self, tmp_path):
        path = write_corpus(tmp_path, {"dialogues": []})
        corpus = load_corpus(path)
        assert corpus.documents() == []

    def test_empty_text_names_the_turn(self, tmp_path):
        data = tiny_corpus_data()
        data["dialogues"][0]["turns"][1]["text"] = "   "
        path = write_corpus(tmp_path, data)
        with pytest.raises(CorpusError, match=r"dialogue 'd1', turn 1"):
            load_corpus(path)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"dialogues": [', encoding="utf-8")
        with pytest.raises(CorpusError, match="invalid JSON"):
            load_corpus(path)

    def test_duplicate_dialogue_id(self, tmp_path):
        data = tiny_corpus_data()
        data["dialogues"].append(json.loads(json.dumps(data["dialogues"][0])))
        path = write_corpus(tmp_path, data)
        with pytest.raises(CorpusError, match="duplicate id"):
            load_corpus(path)

    def test_single_turn_dialogue_rejected(self, tmp_path):
        data = tiny_corpus_data()
        data["dialogues"][0]["turns"] = data["dialogues"][0]["turns"][:1]
        path = write_corpus(tmp_path, data)
        with pytest.raises(CorpusError, match="at least 2 turns"):
            load_corpus(path)

    def test_unknown_speaker(self, tmp_path):
        data = tiny_corpus_data()
        data["dialogues"][0]["turns"][0]["speaker"] = "narrator"
        path = write_corpus(tmp_path, data)
        with pytest.raises(CorpusError, match="speaker"):
            load_corpus(path)

    def test_empty_knowledge_passage_rejected(self, tmp_path):
        data = tiny_corpus_data()
        data["dialogues"][0]["turns"][1]["knowledge"] = [""]
        path = write_corpus(tmp_path, data)
        with pytest.raises(CorpusError, match=r"knowledge\[0\]"):
            load_corpus(path)

    def test_deterministic_load(self, synthetic_corpus_file):
        assert load_corpus(synthetic_corpus_file) == load_corpus(synthetic_corpus_file)

    def test_turn_order_preserved(self, tiny_corpus_file):
        corpus = load_corpus(tiny_corpus_file)
        turns = corpus.dialogues[0].turns
        assert turns[0].speaker is Speaker.APPRENTICE
        assert turns[0].text == "I love Paris."
        assert turns[1].knowledge == ("Paris is the capital city of France.",)


class TestDocuments:
    def test_document_count_formula(self, synthetic_corpus):
        expected = sum(
            1 + len(turn.knowledge)
            for d in synthetic_corpus.dialogues
            for turn in d.turns
        )
        assert len(synthetic_corpus.documents()) == expected

    def test_doc_ids_unique(self, synthetic_corpus):
        docs = synthetic_corpus.documents()
        assert len({d.doc_id for d in docs}) == len(docs)

    def test_stable_order_text_before_knowledge(self, tiny_corpus_file):
        docs = load_corpus(tiny_corpus_file).documents()
        assert docs[1].text == "Paris is the capital of France."
        assert docs[2].text == "Paris is the capital city of France."
        assert docs[1].doc_id == "d1/turn1"
        assert docs[2].doc_id == "d1/turn1/k0"

    def test_wizard_only_filter(self, tmp_path):
        data = tiny_corpus_data()
        data["dialogues"][0]["turns"][0]["knowledge"] = ["Apprentice side passage."]
        corpus = load_corpus(write_corpus(tmp_path, data))
        all_docs = corpus.documents(knowledge="all")
        wizard_docs = corpus.documents(knowledge="wizard-only")
        assert len(all_docs) == 4
        assert len(wizard_docs) == 3
        assert all(d.text != "Apprentice side passage." for d in wizard_docs)

    def test_unknown_filter_rejected(self, synthetic_corpus):
        with pytest.raises(ValueError):
            synthetic_corpus.documents(knowledge="nobody")


class TestSplitSeenUnseen:
    def test_partition_by_topic(self, synthetic_corpus):
        seen, unseen = split_seen_unseen(synthetic_corpus, {"music", "travel"})
        assert all(d.topic in {"music", "travel"} for d in seen.dialogues)
        assert all(d.topic not in {"music", "travel"} for d in unseen.dialogues)
        merged = sorted(seen.dialogues + unseen.dialogues, key=lambda d: d.id)
        assert merged == sorted(synthetic_corpus.dialogues, key=lambda d: d.id)

    def test_all_topics_seen(self, synthetic_corpus):
        topics = {d.topic for d in synthetic_corpus.dialogues}
        seen, unseen = split_seen_unseen(synthetic_corpus, topics)
        assert seen == synthetic_corpus
        assert unseen == Corpus(dialogues=())

    def test_no_topic_seen(self, synthetic_corpus):
        seen, unseen = split_seen_unseen(synthetic_corpus, set())
        assert seen.dialogues == ()
        assert unseen == synthetic_corpus


def test_parse_corpus_requires_object():
    with pytest.raises(CorpusError):
        parse_corpus(["not", "a", "corpus"])
