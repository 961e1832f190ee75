import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from readgauge.cky import Parser
from readgauge.data_files import write_default_resources
from readgauge.grammar import load_grammar
from readgauge.lexicons import load_norms, load_senses
from readgauge.pos_features import load_tag_lexicon
from readgauge.registry import Resources


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("resources")
    write_default_resources(str(out))
    return str(out)


@pytest.fixture(scope="session")
def demo_grammar(data_dir):
    return load_grammar(os.path.join(data_dir, "demo_grammar.txt"))


@pytest.fixture(scope="session")
def demo_parser(demo_grammar):
    return Parser(demo_grammar)


@pytest.fixture(scope="session")
def demo_resources(data_dir, demo_parser):
    return Resources(
        parser=demo_parser,
        tag_lexicon=load_tag_lexicon(os.path.join(data_dir, "tag_lexicon.csv")),
        norm_tables=load_norms(os.path.join(data_dir, "norms.csv")),
        sense_table=load_senses(os.path.join(data_dir, "senses.csv")),
    )
