import oslo_i18n

DOMAIN = "networking_topoid"

_translators = oslo_i18n.TranslatorFactory(domain=DOMAIN)

# The primary translation function using the well-known name "_"
_ = _translators.primary


def get_available_languages():
    return oslo_i18n.get_available_languages(DOMAIN)
