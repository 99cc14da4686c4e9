"""Write the bundled wordlists and segmentation dictionaries (NFC, lowercase, deduplicated)."""

import json
import unicodedata
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "corelab" / "data"

WORDLISTS = {
    "en": """
the a an and or but if then so because of to in on at by for with from about as into over under
between after before is are was were be been being this that these those it its we you they he she
i me my our your their them his her not no yes all some any each every many much more most less least
one two three four five first second third last next answer question option options choice correct
wrong true false let lets think thinking check step steps therefore thus hence since which what who
where when why how given find need needs must should would could can will may might do does did have
has had get gets make makes use using value values number numbers equation equal equals sum total
result results problem solve solution calculate compute mean means only also again other another same
different however wait okay right left now here there hmm actually maybe probably likely consider
example case cases both either neither while during within without per than very too just still
already yet even well good better best bad large small big high low new old long short time times year
years day days people person water energy force mass speed rate cost price law rule rules cell cells
acid reaction gas heat light area volume length width height angle line point function variable graph
group model test state states country government court contract patient disease blood doctor market
money statement argument premise conclusion logic fallacy moral action scenario translate translation
english language word words meaning key important note recall formula compare increase decrease
positive negative zero half double divide multiply minus plus remember looking look see says said
following above below option correctly because seems seem means therefore whether into out up down
""",
    "sw": """
na ya wa za la kwa katika ni si hii hiyo huu huo hizi hizo kuwa kama lakini au pia sana kwamba jibu
swali chaguo sahihi kweli uongo hatua kwanza pili tatu nne tano moja mbili sita saba nane tisa kumi
sasa tena basi hivyo kisha baada kabla wakati mtu watu mtoto watoto maji nguvu kasi bei sheria nchi
serikali mahakama mgonjwa ugonjwa damu daktari soko pesa fedha hoja hitimisho mantiki kitendo jambo
mambo neno maneno lugha tafsiri kiingereza kiswahili namba nambari idadi jumla matokeo tatizo
suluhisho hesabu kuhesabu kupata kutafuta kufikiri nadhani fikiria angalia tuangalie hebu tu
tunahitaji lazima inawezekana inaweza anaweza unaweza tunaweza yote kila baadhi wengi mengi zaidi
chini juu ndani nje kati kubwa ndogo ndefu fupi mpya zamani mzuri nzuri mbaya siku mwaka miaka saa
muda eneo urefu upana kiasi thamani mlinganyo sawa jumlisha gawanya zidisha toa nusu mara sifuri
chanya hasi seli asidi joto mwanga gesi mmenyuko kazi nishati uzito sababu kwahiyo ambayo ambao
ambaye ambacho hapa pale huko wapi nini nani lini vipi kwani ndiyo hapana hakuna kuna ana wana nina
una tuna alikuwa walikuwa itakuwa inamaanisha maana mfano hali swali hilo hili kuhusu kutumia
tunapata tunajua tujue kumbuka kutoka mpaka hadi bila pamoja kubwa kuliko wake wao wetu yangu
""",
    "id": """
yang dan di ke dari ini itu dengan untuk pada adalah tidak bukan akan sudah belum juga atau tetapi
karena jadi maka jika kalau bahwa kita kami saya aku anda mereka dia ia jawaban pertanyaan pilihan
benar salah langkah pertama kedua ketiga satu dua tiga empat lima enam tujuh delapan sembilan sepuluh
sekarang lagi lalu kemudian setelah sebelum saat ketika orang anak air gaya kecepatan harga hukum
negara pemerintah pengadilan pasien penyakit darah dokter pasar uang argumen kesimpulan logika
tindakan hal kata bahasa terjemahan inggris angka jumlah hasil masalah solusi hitung menghitung
mencari berpikir pikir lihat mari perlu harus bisa dapat mungkin semua setiap beberapa banyak lebih
kurang paling atas bawah dalam luar antara besar kecil panjang pendek baru lama baik buruk hari tahun
jam waktu luas lebar tinggi nilai persamaan sama tambah bagi kali kurangi setengah nol positif
negatif sel asam panas cahaya reaksi energi massa berat sebab oleh sehingga yaitu seperti tersebut
hanya masih sangat cukup tentu apa siapa kapan bagaimana mengapa kenapa ya ada tanpa bagian contoh
misalnya berarti artinya soal opsi memilih pilih merupakan menjadi membuat menggunakan diberikan
mempunyai memiliki kita periksa coba karena itu namun sedangkan mobil sekolah pikirkan
""",
    "ms": """
yang dan di ke dari daripada ini itu dengan untuk pada ialah adalah tidak bukan akan sudah telah
belum juga atau tetapi kerana jadi maka jika kalau bahawa kita kami saya anda awak mereka dia ia
jawapan soalan pilihan betul salah langkah pertama kedua ketiga satu dua tiga empat lima enam tujuh
lapan sembilan sepuluh sekarang lagi lalu kemudian selepas sebelum semasa apabila orang kanak-kanak
air daya kelajuan harga undang-undang negara kerajaan mahkamah pesakit penyakit darah doktor pasaran
wang hujah kesimpulan logik tindakan perkara perkataan bahasa terjemahan inggeris nombor bilangan
jumlah keputusan masalah penyelesaian kira mengira mencari berfikir fikir lihat mari perlu mesti
boleh mungkin semua setiap beberapa banyak lebih kurang paling atas bawah dalam luar antara besar
kecil panjang pendek baru lama baik buruk hari tahun jam masa luas lebar tinggi nilai persamaan sama
tambah bahagi darab tolak separuh sifar positif negatif sel asid haba cahaya tenaga jisim berat oleh
sehingga iaitu seperti tersebut hanya sahaja masih sangat cukup tentu apa siapa bila bagaimana
mengapa kenapa ya ada tanpa bahagian contoh misalnya bermaksud maksudnya menjadi membuat
menggunakan diberi mempunyai memiliki semak cuba namun manakala kereta sekolah
""",
    "yo": """
àti ni ti kò kì sí fún pẹ̀lú nínú lórí èyí ìyẹn wọ́n àwa a ẹ mo o ó rẹ̀ wa wọn ìdáhùn ìbéèrè àṣàyàn
òtítọ́ irọ́ ìgbésẹ̀ àkọ́kọ́ èkejì ẹ̀kẹta ọ̀kan méjì mẹ́ta mẹ́rin márùn-ún nísinsìnyí lẹ́yìn ṣáájú ènìyàn
ọmọ omi agbára owó òfin orílẹ̀-èdè ìjọba ilé-ẹjọ́ aláìsàn àìsàn ẹ̀jẹ̀ dókítà ọjà ọ̀rọ̀ èdè ìtumọ̀ gẹ̀ẹ́sì
nọ́mbà àpapọ̀ èsì ìṣòro ojútùú ṣírò ronú wò jẹ́ gbọ́dọ̀ lè gbogbo púpọ̀ díẹ̀ tóbi kékeré tuntun dára
burú ọjọ́ ọdún àkókò iye dọ́gba ìdajì nítorí torí bí pé ṣùgbọ́n tàbí náà yìí kí ta ibo báwo bẹ́ẹ̀ni
rárá wà sì tún ṣe ní fi mú lọ wá rí mọ̀ sọ gbà ẹ̀kọ́ ìwé ooru ìmọ́lẹ̀ ìwọ̀n àpẹẹrẹ jẹ́ kí a ẹ̀rí ìparí
ọ̀nà ayé ara ọkàn ilẹ̀ ẹ̀dá àyẹ̀wò ìṣirò
""",
    "ig": """
na nke ya ha anyị unu m gị ọ ị bụ adịghị ga eme mee ihe nwere dị maka mana ma azịza ajụjụ nhọrọ ezi
eziokwu ụgha nzọụkwụ mbụ otu abụọ atọ anọ ise isii asaa asatọ itoolu iri ugbua mgbe tupu emesịa mmadụ
ndị nwa ụmụaka mmiri ike ego iwu obodo gọọmentị ụlọikpe onye ọrịa ọbara dọkịta ahịa okwu asụsụ
ntụgharị bekee nọmba ọnụọgụ mkpokọta nsonaazụ nsogbu ngwọta gụọ chee chọọ lee ka kwesịrị niile
ọtụtụ ụfọdụ karịa ukwu obere ọhụrụ ochie ọma njọ ụbọchị afọ oge uru nha ọkara n'ihi n'ihina ebe
gịnị olee kedu ee mba kwa nọ bịa gaa hụ mara kwuo were jiri nyere ọkụ ụzọ akwụkwọ ndụ ala ụwa isi
aka nkọwa nchọpụta ịza ịgụ ịmara
""",
    "hi": """
है हैं का की के में से को और यह वह उत्तर प्रश्न सही गलत पहला दूसरा चरण संख्या कुल परिणाम समस्या हल
इसलिए क्योंकि लेकिन या नहीं हाँ सभी कुछ बहुत अधिक कम बड़ा छोटा नया पुराना दिन वर्ष समय पानी बल
ऊर्जा कानून देश सरकार न्यायालय रोगी रक्त डॉक्टर बाजार पैसा तर्क निष्कर्ष भाषा शब्द अनुवाद
अंग्रेज़ी विकल्प चुनें सोचें देखें गणना मान समीकरण बराबर आधा शून्य हम आप वे इस उस जो तो भी
""",
    "am": """
ነው ናቸው እና ወይም ግን ይህ ያ መልስ ጥያቄ ትክክል ስህተት ደረጃ አንድ ሁለት ሶስት አራት አምስት ቁጥር ድምር ውጤት
ችግር መፍትሄ ስለዚህ ምክንያቱም አይደለም አዎ ሁሉም አንዳንድ ብዙ ትንሽ ትልቅ አዲስ ቀን ዓመት ጊዜ ውሃ ኃይል ህግ
ሀገር መንግስት ፍርድ ታካሚ ደም ሐኪም ገበያ ገንዘብ ቋንቋ ቃል ትርጉም እንግሊዝኛ አማራጭ እናስብ እንመልከት እሴት
እኩል ግማሽ ዜሮ በጣም ላይ ውስጥ
""",
}

DICTIONARIES = {
    "zh": """
任务 问题 答案 选项 正确 错误 步骤 第一 第二 数字 总和 结果 因此 因为 但是 或者 不是 是 的 了 我们 他们
这个 那个 所有 一些 很多 更多 计算 方程 等于 一半 零 时间 水 能量 法律 国家 政府 法院 病人 血液 医生
市场 钱 论证 结论 语言 单词 翻译 英语 思考 检查 首先 然后 所以 可以 需要 应该 如果 那么 我 你 他 她
它 在 有 和 与 为 个 中 上 下 大 小 任 务
""",
    "ja": """
です ます これ それ あれ この その ため から まで ので けど しかし そして また つまり ここ そこ どこ
なに だれ いつ どう ない ある いる する した して なる の は が を に で と も や か ね よ テスト
データ エネルギー スピード ゼロ ステップ
""",
    "th": """
ปัญหา คำตอบ ถูกต้อง ผิด ขั้นตอน ตัวเลือก ดังนั้น เพราะ แต่ และ หรือ ไม่ ใช่ ที่ ของ เป็น มี ใน จาก
การ คำนวณ สมการ เท่ากับ ภาษา คำ แปล อังกฤษ ตัวเลข ผลลัพธ์ เรา เขา ฉัน นี้ นั้น
""",
    "my": """
အဖြေ မေးခွန်း မှန် မှား အဆင့် ဒါကြောင့် နှင့် သို့မဟုတ် မဟုတ် ဟုတ် ဖြစ် သည် ကို တွင် မှ ဘာသာစကား
စကားလုံး ဘာသာပြန် အင်္ဂလိပ် ကိန်းဂဏန်း ရလဒ် ကျွန်ုပ်တို့ သူ ဒီ အဲဒီ
""",
}


def entries(block):
    seen, out = set(), []
    for w in block.split():
        w = unicodedata.normalize("NFC", w).lower()
        if w not in seen:
            seen.add(w)
            out.append(w)
    return out


def main():
    for code, block in WORDLISTS.items():
        (DATA / "wordlists" / f"{code}.txt").write_text("\n".join(entries(block)) + "\n", encoding="utf-8")
    for code, block in DICTIONARIES.items():
        (DATA / "dictionaries" / f"{code}.txt").write_text("\n".join(entries(block)) + "\n", encoding="utf-8")
    (DATA / "dictionaries" / "segmenters.json").write_text(
        json.dumps({"Han": "zh.txt", "Kana": "ja.txt", "Thai": "th.txt", "Myanmar": "my.txt"}, indent=2) + "\n",
        encoding="utf-8",
    )
    registry = {
        "en": {"scripts": ["Latin"], "wordlist": "wordlists/en.txt"},
        "sw": {"scripts": ["Latin"], "wordlist": "wordlists/sw.txt"},
        "id": {"scripts": ["Latin"], "wordlist": "wordlists/id.txt"},
        "ms": {"scripts": ["Latin"], "wordlist": "wordlists/ms.txt"},
        "yo": {"scripts": ["Latin"], "wordlist": "wordlists/yo.txt",
               "diacritics": "ẹọṣàáèéìíòóùúńǹḿ̀́"},
        "ig": {"scripts": ["Latin"], "wordlist": "wordlists/ig.txt", "diacritics": "ịọụṅ"},
        "hi": {"scripts": ["Devanagari"], "wordlist": "wordlists/hi.txt"},
        "am": {"scripts": ["Ethiopic"], "wordlist": "wordlists/am.txt"},
        "zh": {"scripts": ["Han"], "wordlist": "dictionaries/zh.txt"},
        "ja": {"scripts": ["Kana"], "wordlist": "dictionaries/ja.txt"},
        "th": {"scripts": ["Thai"], "wordlist": "dictionaries/th.txt"},
        "my": {"scripts": ["Myanmar"], "wordlist": "dictionaries/my.txt"},
        "ar": {"scripts": ["Arabic"]},
    }
    (DATA / "languages.json").write_text(json.dumps(registry, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
