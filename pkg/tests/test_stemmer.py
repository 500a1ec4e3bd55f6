from semcloud.stemmer import stem


def test_derivational_family_shares_stem():
    assert stem("explanation") == stem("explaining")


def test_ization_family():
    assert stem("visualization") == stem("visualizing") == stem("visualize")


def test_comparison_family():
    assert stem("comparison") == stem("comparing") == stem("compares")


def test_plural_and_singular():
    assert stem("words") == stem("word")
    assert stem("boxes") == stem("box")
    assert stem("cities") == stem("city")
    assert stem("families") == stem("family")


def test_doubled_consonant_undoubling():
    assert stem("running") == stem("runs") == "run"
    assert stem("stopped") == stem("stops") == "stop"


def test_no_undoubling_of_l_s_z():
    assert stem("falls") == "fall"


def test_silent_e():
    assert stem("making") == stem("makes") == stem("make")


def test_short_words_untouched():
    assert stem("gas") == "gas"
    assert stem("is") == "is"


def test_deterministic():
    assert stem("explanation") == stem("explanation")
