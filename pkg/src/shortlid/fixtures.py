"""Synthetic multilingual fixture corpora for benchmarks and tests.

Sentences are sampled from hand-written per-language word inventories
(common function and content words, plus a few cross-language borrowings),
lightly perturbed with tweet-style noise: spelling slips, hashtags,
mentions, URLs, and emoticons.  Fourteen languages are covered, six of
them non-Latin (Russian, Arabic, Thai, Korean, Japanese, Chinese).  All
generation is fully deterministic given the seed.

``generate_fixture_corpus`` produces the bundled benchmark corpus (about
200 labeled samples per language, each at most 140 characters);
``generate_user_stream`` produces a timestamped per-user stream of heavily
truncated texts for the evidence-accumulation benchmarks.
"""

from __future__ import annotations

import json
import random
from datetime import datetime, timedelta
from pathlib import Path
from typing import Sequence

from .corpus import Sample

WORDS = {
    "en": """the and is are was were have has not you we they this that what when
        where people time good morning night thanks today tomorrow weather music
        happy work home friend water coffee book street city love small big world
        always never think know make life right week year day new old very really
        going great rain sun train station market dinner football game song""",
    "es": """el la los las un una y es son está estamos no nosotros ellos este esa
        qué cuándo dónde gente tiempo bueno buenos días noche gracias hoy mañana
        clima música feliz trabajo casa amigo agua café libro calle ciudad amor
        pequeño grande mundo siempre nunca pienso saber hacer vida semana año día
        nuevo viejo muy bien lluvia sol tren estación mercado cena fútbol canción""",
    "pt": """o a os as um uma e são está estamos não você nós eles este essa que
        quando onde pessoas tempo bom dias noite obrigado hoje amanhã clima música
        feliz trabalho casa amigo água café livro rua cidade amor pequeno grande
        mundo sempre nunca penso saber fazer vida semana ano dia novo velho muito
        bem chuva sol trem estação mercado jantar futebol jogo canção""",
    "nl": """de het een en is zijn was waren hebben niet jij wij zij dit dat wat
        wanneer waar mensen tijd goed goede morgen nacht dank vandaag weer muziek
        blij werk huis vriend water koffie boek straat stad liefde klein groot
        wereld altijd nooit denk weten maken leven week jaar dag nieuw oud heel
        erg regen zon trein station markt avondeten voetbal spel lied""",
    "de": """der die das ein eine und ist sind war waren haben nicht du wir sie
        dies was wann wo leute zeit gut guten morgen nacht danke heute wetter
        musik glücklich arbeit haus freund wasser kaffee buch straße stadt liebe
        klein groß welt immer nie denke wissen machen leben woche jahr tag neu
        alt sehr wirklich regen sonne zug bahnhof markt abendessen fußball lied""",
    "fr": """le la les un une et est sont était avoir pas tu nous ils ce cette
        quoi quand où gens temps bon bonjour nuit merci aujourd demain météo
        musique heureux travail maison ami eau café livre rue ville amour petit
        grand monde toujours jamais pense savoir faire vie semaine année jour
        nouveau vieux très bien pluie soleil train gare marché dîner football chanson""",
    "it": """il la i le un una e sono era avere non tu noi loro questo quella che
        quando dove gente tempo buono buongiorno notte grazie oggi domani meteo
        musica felice lavoro casa amico acqua caffè libro strada città amore
        piccolo grande mondo sempre mai penso sapere fare vita settimana anno
        giorno nuovo vecchio molto bene pioggia sole treno stazione mercato cena calcio canzone""",
    "tr": """ve bir bu şu ben sen biz onlar değil ne zaman nerede insanlar iyi
        günaydın gece teşekkürler bugün yarın hava müzik mutlu iş ev arkadaş
        kahve kitap sokak şehir aşk küçük büyük dünya her asla düşünüyorum bilmek
        yapmak hayat hafta yıl gün yeni eski çok güzel var yok yağmur güneş tren
        istasyon pazar akşam yemek futbol oyun şarkı""",
    "ru": """и в не на я ты мы они это что когда где люди время хорошо доброе
        утро ночь спасибо сегодня завтра погода музыка счастливый работа дом друг
        вода кофе книга улица город любовь маленький большой мир всегда никогда
        думаю знать делать жизнь неделя год день новый старый очень есть нет
        дождь солнце поезд вокзал рынок ужин футбол игра песня""",
    "ar": """في من على إلى هذا هذه ما متى أين الناس الوقت جيد صباح الخير الليل
        شكرا اليوم غدا الطقس الموسيقى سعيد العمل البيت صديق الماء القهوة الكتاب
        الشارع المدينة الحب صغير كبير العالم دائما أبدا أعتقد أعرف الحياة الأسبوع
        السنة يوم جديد قديم جدا نعم لا المطر الشمس القطار المحطة السوق العشاء كرة""",
    "th": """สวัสดี ขอบคุณ วันนี้ พรุ่งนี้ อากาศ ดนตรี มีความสุข งาน บ้าน กลางคืน
        เพื่อน น้ำ กาแฟ หนังสือ ถนน เมือง ความรัก เล็ก ใหญ่ โลก เสมอ ไม่เคย คิด
        รู้ ทำ ชีวิต สัปดาห์ ปี วัน ที่ไหน เมื่อไหร่ คน ดี มาก ใช่ ไม่ เวลา
        ตอนเช้า กิน ข้าว ไป มา อยู่ ได้ ฝน แดด รถไฟ ตลาด เพลง""",
    "ko": """안녕하세요 감사합니다 오늘 내일 날씨 음악 행복해요 일 집 밤 친구 물
        커피 책 거리 도시 사랑 작은 큰 세계 항상 절대 생각해요 알아요 해요 인생
        주말 올해 하루 어디 언제 사람들 좋은 아주 네 아니요 시간 아침 먹어요 밥
        가요 와요 있어요 없어요 비 해 기차 역 시장 저녁 축구 노래""",
    "ja": """今日 明日 天気 音楽 幸せ 仕事 家 夜 友達 水 コーヒー 本 道 街 愛
        小さい 大きい 世界 人生 週末 今年 一日 人々 時間 朝 ご飯 こんにちは
        ありがとう おはよう とても いつも どこ いつ いい そう 元気 楽しい 新しい
        古い 雨 太陽 電車 駅 市場 夕食 サッカー 歌""",
    "zh": """你好 谢谢 今天 明天 天气 音乐 幸福 工作 家 晚上 朋友 水 咖啡 书
        街道 城市 爱 小 大 世界 总是 从不 我想 知道 做 生活 星期 年 天 哪里
        时候 人们 好 很 是 不是 时间 早上 吃饭 去 来 在 有 没有 的 了 我们
        他们 这个 那个 非常 雨 太阳 火车 车站 市场 晚饭 足球 歌""",
}

# Borrowings present in several Latin-script languages; they keep those
# languages honestly confusable on very short texts.
_SHARED_LATIN = ["ok", "internet", "taxi", "hotel", "radio", "metro", "foto"]
for _code in ("en", "es", "pt", "nl", "de", "fr", "it", "tr"):
    WORDS[_code] = WORDS[_code] + " " + " ".join(_SHARED_LATIN)

INVENTORIES: dict[str, tuple[str, ...]] = {
    code: tuple(words.split()) for code, words in WORDS.items()
}

# Kana function tokens woven into Japanese sentences (most real Japanese
# tweets contain kana even when the content words are kanji).
_JA_PARTICLES = ("の", "が", "を", "に", "は", "と", "も", "ね", "です", "ます")

# Languages written without spaces between most tokens.
_NO_SPACE = {"th", "ja", "zh"}

LANGUAGES = tuple(sorted(INVENTORIES))
NON_LATIN = ("ar", "ja", "ko", "ru", "th", "zh")

_EMOTICON_DECOR = (":)", ":(", ":D", ";)", "xD", "<3")


def _perturb_token(token: str, rng: random.Random) -> str:
    """One tweet-style spelling slip: doubled, dropped, or swapped char."""
    if len(token) < 3:
        return token
    roll = rng.random()
    pos = rng.randrange(len(token))
    if roll < 0.4:
        return token[:pos] + token[pos] + token[pos:]
    if roll < 0.7:
        return token[:-1]
    if pos < len(token) - 1:
        return token[:pos] + token[pos + 1] + token[pos] + token[pos + 2 :]
    return token


def sentence(lang: str, rng: random.Random, noise: float = 0.22) -> str:
    """One synthetic sentence in ``lang``, at most 140 characters."""
    inventory = INVENTORIES[lang]
    n_tokens = rng.randint(2, 8 if lang in _NO_SPACE else 7)
    tokens = [rng.choice(inventory) for _ in range(n_tokens)]
    if lang == "ja":
        woven: list[str] = []
        for tok in tokens:
            woven.append(tok)
            if rng.random() < 0.75:
                woven.append(rng.choice(_JA_PARTICLES))
        tokens = woven
    tokens = [
        _perturb_token(t, rng) if rng.random() < noise else t for t in tokens
    ]
    joiner = "" if lang in _NO_SPACE else " "
    return joiner.join(tokens)[:140]


def _decorate(text: str, rng: random.Random) -> str:
    """Add removable tweet noise: mention, URL, hashtag, emoticon."""
    roll = rng.random()
    if roll < 0.10:
        text = f"@user{rng.randrange(1000)} " + text
    elif roll < 0.18:
        text = text + f" http://t.co/{rng.randrange(100000):x}"
    elif roll < 0.26:
        words = text.split()
        if words:
            i = rng.randrange(len(words))
            words[i] = "#" + words[i]
            text = " ".join(words)
    elif roll < 0.34:
        text = text + " " + rng.choice(_EMOTICON_DECOR)
    return text


def generate_fixture_corpus(seed: int = 72012, per_lang: int = 200) -> list[Sample]:
    """Labeled benchmark corpus: ``per_lang`` distinct texts per language."""
    rng = random.Random(seed)
    samples: list[Sample] = []
    for lang in LANGUAGES:
        seen: set[str] = set()
        attempts = 0
        while len(seen) < per_lang:
            attempts += 1
            if attempts > per_lang * 200:
                raise RuntimeError(f"cannot generate {per_lang} distinct texts for {lang}")
            text = _decorate(sentence(lang, rng), rng)
            if text in seen:
                continue
            seen.add(text)
            samples.append(Sample(text=text, label=lang))
    return samples


def generate_user_stream(
    seed: int = 42012,
    n_users: int = 100,
    tweets_per_user: int = 20,
    monolingual_frac: float = 0.9,
    max_chars: int = 15,
) -> list[Sample]:
    """Timestamped per-user stream of deliberately truncated texts.

    Most users stick to one language (their UI language, with a minority
    set to English instead); the rest mix two languages.  Texts are cut to
    ``max_chars`` characters, which makes single texts genuinely ambiguous
    and leaves room for user history to help.
    """
    rng = random.Random(seed)
    n_mono = round(n_users * monolingual_frac)
    users = []
    for u in range(n_users):
        dominant = LANGUAGES[u % len(LANGUAGES)]
        if u < n_mono:
            langs = (dominant,)
            ui = dominant if rng.random() < 0.9 else "en"
        else:
            second = rng.choice([l for l in LANGUAGES if l != dominant])
            langs = (dominant, second)
            ui = dominant
        users.append((f"u{u:03d}", langs, ui))

    slots = [(user, t) for user in users for t in range(tweets_per_user)]
    rng.shuffle(slots)
    base = datetime(2012, 4, 15, 8, 0, 0)
    samples: list[Sample] = []
    for minute, ((user_id, langs, ui), _t) in enumerate(slots):
        lang = langs[0] if len(langs) == 1 or rng.random() < 0.6 else langs[1]
        text = sentence(lang, rng)[:max_chars].strip()
        while not text:
            text = sentence(lang, rng)[:max_chars].strip()
        samples.append(
            Sample(
                text=text,
                label=lang,
                user_id=user_id,
                ui_lang=ui,
                timestamp=base + timedelta(minutes=minute),
            )
        )
    return samples


def save_jsonl(samples: Sequence[Sample], path: str | Path) -> None:
    """Write samples in the dataset JSONL schema."""
    with open(path, "w", encoding="utf-8") as fp:
        for s in samples:
            record: dict[str, str] = {"text": s.text}
            if s.label is not None:
                record["lang"] = s.label
            if s.user_id is not None:
                record["user_id"] = s.user_id
            if s.ui_lang is not None:
                record["ui_lang"] = s.ui_lang
            if s.timestamp is not None:
                record["created_at"] = s.timestamp.isoformat()
            fp.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")


def bundled_corpus_path() -> Path:
    from importlib import resources

    return Path(str(resources.files("shortlid.data").joinpath("fixture/corpus.jsonl")))
