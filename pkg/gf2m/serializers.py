from rest_framework import serializers


class HexField(serializers.Field):
    """Field element as lowercase hex, e.g. 0x3 = 1 + alpha"""

    def to_representation(self, value):
        return hex(int(value))

    def to_internal_value(self, data):
        try:
            return int(data, 16)
        except (TypeError, ValueError):
            raise serializers.ValidationError(f'{data!r} is not a hex element')


class FieldCtxSerializer(serializers.Serializer):
    m = serializers.IntegerField()
    i = serializers.IntegerField()
    q = serializers.IntegerField()
    d = serializers.IntegerField()
    order = serializers.IntegerField()
    modulus = HexField()
