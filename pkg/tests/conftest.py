import pytest

from shortlid.corpus import load_dataset
from shortlid.fixtures import bundled_corpus_path
from shortlid.kneser_ney import KnModel
from shortlid.preprocess import clean, is_classifiable


@pytest.fixture(scope="session")
def fixture_samples():
    return load_dataset(bundled_corpus_path())


@pytest.fixture(scope="session")
def fixture_model(fixture_samples):
    pairs = [(clean(s.text), s.label) for s in fixture_samples]
    return KnModel.train([(t, l) for t, l in pairs if is_classifiable(t)], max_order=4)
